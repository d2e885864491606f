"""Finitely generated abelian groups via Smith normal form, their
decomposition into indecomposable cyclic summands, uniform dimension, and
the analogous toy decomposition of finite sets by cardinality."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as cartesian

from sympy import factorint

Matrix = list[list[int]]


class MatrixFormatError(ValueError):
    pass


def shape(A: Matrix) -> tuple[int, int]:
    return len(A), (len(A[0]) if A else 0)


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: Matrix, B: Matrix) -> Matrix:
    (m, k), (k2, n) = shape(A), shape(B)
    if k != k2 and not (m and n == 0):
        raise ValueError(f"shapes {m}x{k} and {k2}x{n} do not match")
    return [[sum(A[i][r] * B[r][j] for r in range(k)) for j in range(n)] for i in range(m)]


def determinant(A: Matrix) -> int:
    """Exact integer determinant by fraction-free (Bareiss) elimination."""
    n = len(A)
    M = [row[:] for row in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[-1][-1] if n else 1


def block_diag(A: Matrix, B: Matrix) -> Matrix:
    (ma, na), (mb, nb) = shape(A), shape(B)
    top = [row[:] + [0] * nb for row in A]
    bottom = [[0] * na + row[:] for row in B]
    return top + bottom


# --------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SNFResult:
    U: Matrix
    D: Matrix
    V: Matrix

    @property
    def diagonal(self) -> list[int]:
        m, n = shape(self.D)
        return [self.D[i][i] for i in range(min(m, n))]


def smith_normal_form(A: Matrix) -> SNFResult:
    """``U A V = D`` with ``U``, ``V`` unimodular and ``d_1 | d_2 | ...``.

    Pivot: the nonzero entry of least absolute value, scanning rows before
    columns. Python integers keep every step exact.
    """
    m, n = shape(A)
    if any(len(r) != n for r in A):
        raise MatrixFormatError("matrix rows differ in length")
    D = [[int(v) for v in row] for row in A]
    U, V = identity(m), identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (D, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row dst += q * row src
        for M in (D, U):
            M[dst] = [a + q * b for a, b in zip(M[dst], M[src])]

    def add_col(dst, src, q):
        for M in (D, V):
            for row in M:
                row[dst] += q * row[src]

    def smallest(cells):
        best = None
        for i, j in cells:
            v = abs(D[i][j])
            if v and (best is None or v < best[0]):
                best = (v, i, j)
        return best

    for t in range(min(m, n)):
        best = smallest((i, j) for i in range(t, m) for j in range(t, n))
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // D[t][t]))
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // D[t][t]))
            line = [(i, t) for i in range(t, m)] + [(t, j) for j in range(t + 1, n)]
            _, i, j = smallest(line)
            if (i, j) != (t, t) or any(D[i][t] for i in range(t + 1, m)) or any(D[t][j] for j in range(t + 1, n)):
                if (i, j) != (t, t):
                    swap_rows(t, i)
                    swap_cols(t, j)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % D[t][t]), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if D[t][t] < 0:
            D[t] = [-v for v in D[t]]
            U[t] = [-v for v in U[t]]
    return SNFResult(U, D, V)


def is_smith_form(D: Matrix) -> bool:
    m, n = shape(D)
    if any(D[i][j] for i in range(m) for j in range(n) if i != j):
        return False
    diag = [D[i][i] for i in range(min(m, n))]
    if any(d < 0 for d in diag):
        return False
    nz = [d for d in diag if d]
    if diag[:len(nz)] != nz:
        return False
    return all(b % a == 0 for a, b in zip(nz, nz[1:]))


# --------------------------------------------------------------------------
# abelian groups


@dataclass(frozen=True)
class AbelianGroup:
    """``Z^rank`` plus the cyclic groups ``Z/q`` for the prime powers ``q``."""

    rank: int = 0
    primary_factors: tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        if self.rank < 0:
            raise ValueError("rank must be non-negative")
        for q in self.primary_factors:
            if q <= 1 or len(factorint(q)) != 1:
                raise ValueError(f"{q} is not a prime power > 1")
        object.__setattr__(self, "primary_factors", tuple(sorted(self.primary_factors)))

    def is_zero(self) -> bool:
        return self.rank == 0 and not self.primary_factors

    def order(self) -> int | None:
        if self.rank:
            return None
        out = 1
        for q in self.primary_factors:
            out *= q
        return out

    def summands(self) -> list["AbelianGroup"]:
        """The indecomposable cyclic summands: copies of ``Z`` and ``Z/p^k``."""
        return [AbelianGroup(1)] * self.rank + [AbelianGroup(0, (q,)) for q in self.primary_factors]

    def is_indecomposable(self) -> bool:
        return len(self.summands()) == 1

    def __str__(self) -> str:
        parts = (["Z"] if self.rank == 1 else [f"Z^{self.rank}"] if self.rank else [])
        parts += [f"Z/{q}" for q in self.primary_factors]
        return " + ".join(parts) or "0"


def direct_sum(G: AbelianGroup, H: AbelianGroup) -> AbelianGroup:
    return AbelianGroup(G.rank + H.rank, G.primary_factors + H.primary_factors)


def cyclic(n: int) -> AbelianGroup:
    """``Z/n`` (``n = 0`` gives ``Z``), split into primary parts."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return AbelianGroup(1)
    return AbelianGroup(0, tuple(p**k for p, k in factorint(n).items()))


def cokernel_decomposition(A: Matrix) -> AbelianGroup:
    """``Z^rows`` modulo the span of the columns of ``A``."""
    m, _ = shape(A)
    diag = smith_normal_form(A).diagonal
    nonzero = [abs(d) for d in diag if d]
    factors = []
    for d in nonzero:
        factors += [p**k for p, k in factorint(d).items()]
    return AbelianGroup(m - len(nonzero), tuple(factors))


def uniform_dimension(G: AbelianGroup) -> int:
    """``Z`` and every ``Z/p^k`` are uniform, and the dimension adds over direct sums."""
    return G.rank + len(G.primary_factors)


@dataclass
class DimensionHypothesesReport:
    zero_exactly_on_zero: bool
    additive_pairs: int
    strict_pairs: list[tuple[AbelianGroup, AbelianGroup]]  # pairs where only <= held
    failures: list[tuple[AbelianGroup, AbelianGroup]]
    decomposable_factors: list[AbelianGroup]

    @property
    def ok(self) -> bool:
        return self.zero_exactly_on_zero and not self.failures and not self.decomposable_factors


def check_dimension_hypotheses(groups) -> DimensionHypothesesReport:
    """For the sample: the dimension vanishes exactly on the zero group,
    ``dim G + dim H <= dim (G + H)`` for every pair (recording whether it is
    an equality), and every emitted summand is indecomposable."""
    groups = list(groups)
    zero_ok = all((uniform_dimension(G) == 0) == G.is_zero() for G in groups)
    zero_ok = zero_ok and uniform_dimension(AbelianGroup()) == 0
    strict, fails, pairs = [], [], 0
    for G in groups:
        for H in groups:
            lhs = uniform_dimension(G) + uniform_dimension(H)
            rhs = uniform_dimension(direct_sum(G, H))
            pairs += 1
            if lhs > rhs:
                fails.append((G, H))
            elif lhs < rhs:
                strict.append((G, H))
    bad = [S for G in groups for S in G.summands() if not S.is_indecomposable()]
    return DimensionHypothesesReport(zero_ok, pairs, strict, fails, bad)


# --------------------------------------------------------------------------
# finite sets under cartesian product


def decompose_cardinality(n: int) -> list[int]:
    """A set of size ``n`` is a product of sets of prime size; singletons are terminal."""
    if n < 1:
        raise ValueError("cardinality must be at least 1")
    return sorted(p for p, k in factorint(n).items() for _ in range(k))


def set_dimension_violation(max_card: int = 20) -> tuple[int, int] | None:
    """First ``(a, b)`` with ``(a-1) + (b-1) > ab - 1``, or None."""
    for a, b in cartesian(range(1, max_card + 1), repeat=2):
        if (a - 1) + (b - 1) > a * b - 1:
            return a, b
    return None


# --------------------------------------------------------------------------
# files


def parse_matrix(text: str) -> Matrix:
    """One row per line of whitespace-separated integers; ``#`` starts a
    comment; a line holding only ``.`` is a row of length zero."""
    rows: Matrix = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line == ".":
            rows.append([])
            continue
        try:
            rows.append([int(tok) for tok in line.split()])
        except ValueError:
            raise MatrixFormatError(f"line {lineno}: expected integers") from None
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise MatrixFormatError("rows differ in length")
    return rows
