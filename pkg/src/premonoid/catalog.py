"""Named monoid constructors and the ``kind:args`` URI resolver."""

from __future__ import annotations

import itertools
import re
from functools import lru_cache
from typing import Iterator

import numpy as np

from premonoid.monoid import (
    EnumerableMonoid,
    FiniteMonoid,
    GradedMonoid,
    MonoidFormatError,
    is_associative_table,
)


def zmod(n: int) -> FiniteMonoid:
    if n < 1:
        raise ValueError("Z/n needs n >= 1")
    return FiniteMonoid.from_function(
        range(n), lambda a, b: (a + b) % n, 0, name=f"zmod:{n}",
        facts={"commutative": True, "dedekind_finite": True},
    )


def klein() -> FiniteMonoid:
    elems = [(0, 0), (1, 0), (0, 1), (1, 1)]
    return FiniteMonoid.from_function(
        elems, lambda a, b: ((a[0] + b[0]) % 2, (a[1] + b[1]) % 2), (0, 0),
        label=lambda a: "e" if a == (0, 0) else {(1, 0): "a", (0, 1): "b", (1, 1): "c"}[a],
        name="klein",
    )


def saturation(n: int) -> FiniteMonoid:
    """``{0..n}`` under ``min(a + b, n)``."""
    if n < 0:
        raise ValueError("saturation bound must be >= 0")
    return FiniteMonoid.from_function(range(n + 1), lambda a, b: min(a + b, n), 0, name=f"sat:{n}")


def idem2() -> FiniteMonoid:
    """``{1, e}`` with ``e * e = e``."""
    return FiniteMonoid(["1", "e"], 0, [[0, 1], [1, 1]], name="idem2")


def symmetric(k: int) -> FiniteMonoid:
    from premonoid.permutations import symmetric_group

    return symmetric_group(k)


# --------------------------------------------------------------------------
# infinite backends


class NumericalMonoid(GradedMonoid):
    """Submonoid of ``(N, +)`` generated by positive integers; grade = value."""

    facts = {
        "commutative": True,
        "cancellative": True,
        "unit_cancellative": True,
        "acyclic": True,
        "dedekind_finite": True,
        "grade_is_length_function": True,
    }

    def __init__(self, gens) -> None:
        gens = tuple(sorted(set(int(g) for g in gens)))
        if not gens or gens[0] <= 0:
            raise ValueError("numerical monoid generators must be positive")
        self.gens = gens
        self.name = "numerical:" + ",".join(map(str, gens))
        self._members_cache: dict[int, list[int]] = {}

    @property
    def identity(self) -> int:
        return 0

    def op(self, x, y):
        return x + y

    def grade(self, x) -> int:
        return x

    def contains(self, v: int) -> bool:
        return v >= 0 and v in self.enumerate(v)

    def enumerate(self, bound: int) -> list[int]:
        if bound not in self._members_cache:
            reach = [False] * (bound + 1)
            reach[0] = True
            for v in range(1, bound + 1):
                reach[v] = any(v >= g and reach[v - g] for g in self.gens)
            self._members_cache[bound] = [v for v in range(bound + 1) if reach[v]]
        return list(self._members_cache[bound])

    def decode(self, s: str) -> int:
        return int(s)


class FreeMonoid(GradedMonoid):
    """Words over single-character letters; grade = length; ``eps`` is empty."""

    facts = {
        "cancellative": True,
        "unit_cancellative": True,
        "acyclic": True,
        "dedekind_finite": True,
        "grade_is_length_function": True,
    }

    def __init__(self, alphabet: str) -> None:
        if not alphabet or len(set(alphabet)) != len(alphabet):
            raise ValueError("alphabet must be non-empty with distinct letters")
        self.alphabet = alphabet
        self.name = f"free:{alphabet}"

    @property
    def identity(self) -> str:
        return ""

    def op(self, x, y):
        return x + y

    def grade(self, x) -> int:
        return len(x)

    def enumerate(self, bound: int) -> list[str]:
        out = []
        for length in range(bound + 1):
            out.extend("".join(w) for w in itertools.product(self.alphabet, repeat=length))
        return out

    def encode(self, x) -> str:
        return x or "eps"

    def decode(self, s: str) -> str:
        s = s.strip()
        if s in ("eps", ""):
            return ""
        if any(c not in self.alphabet for c in s):
            raise ValueError(f"{s!r} is not a word over {self.alphabet!r}")
        return s


class BicyclicMonoid(EnumerableMonoid):
    """Pairs ``(a, b)`` standing for ``y^a x^b`` with ``x y = 1``.

    Since ``x^b y^c`` collapses to ``x^(b-c)`` or ``y^(c-b)``, the product is
    ``(a + max(c - b, 0), d + max(b - c, 0))``. Grade ``a + b`` is only an
    exploration bound: it is not monotone (``x * y = 1``).
    """

    name = "bicyclic"
    # chain conditions hold by theory: y^a x^b H = y^a H, and H z H = H for every z
    facts = {"dedekind_finite": False, "artinian:left": True, "artinian:right": True,
             "artinian:div": True, "noetherian:div": True}
    _pat = re.compile(r"^(?:y(?:\^(\d+))?)?(?:x(?:\^(\d+))?)?$")

    @property
    def identity(self):
        return (0, 0)

    x = (0, 1)
    y = (1, 0)

    def op(self, p, q):
        a, b = p
        c, d = q
        return (a + max(c - b, 0), d + max(b - c, 0))

    def power(self, p, k: int):
        acc = self.identity
        for _ in range(k):
            acc = self.op(acc, p)
        return acc

    def enumerate(self, bound: int):
        return [(a, s - a) for s in range(bound + 1) for a in range(s, -1, -1)]

    def encode(self, p) -> str:
        a, b = p
        if a == b == 0:
            return "1"
        part = lambda sym, k: "" if k == 0 else (sym if k == 1 else f"{sym}^{k}")
        return part("y", a) + part("x", b)

    def decode(self, s: str):
        s = s.strip()
        if s == "1":
            return (0, 0)
        m = self._pat.match(s)
        if not m or not s:
            raise ValueError(f"{s!r} is not of the form y^a x^b")
        a = 0 if "y" not in s else int(m.group(1) or 1)
        b = 0 if "x" not in s else int(m.group(2) or 1)
        return (a, b)

    def certified_nonunit(self, p) -> bool:
        # (a,b)(c,d) = (0,0) forces a = d = 0 and b = c; two-sided only for (0,0)
        return p != (0, 0)

    def sandwich_to_identity(self, z, max_exp: int = 32) -> tuple[int, int] | None:
        """Smallest ``(a, b)`` (by ``a + b``) with ``x^a z y^b = 1``, searched up to ``max_exp``."""
        for s in range(2 * max_exp + 1):
            for a in range(max(0, s - max_exp), min(s, max_exp) + 1):
                b = s - a
                w = self.op(self.op(self.power(self.x, a), z), self.power(self.y, b))
                if w == self.identity:
                    return a, b
        return None


class MultiplicativeNaturals(EnumerableMonoid):
    """``(N, *)`` explored on ``0..bound``; not graded because of 0."""

    name = "mulnat"
    facts = {"commutative": True, "dedekind_finite": True}

    @property
    def identity(self):
        return 1

    def op(self, x, y):
        return x * y

    def enumerate(self, bound: int):
        return list(range(bound + 1))

    def decode(self, s: str):
        return int(s)

    def certified_nonunit(self, x) -> bool:
        return x != 1


# --------------------------------------------------------------------------
# random and exhaustive small tables


@lru_cache(maxsize=None)
def _all_tables(n: int) -> np.ndarray:
    """Every associative ``n x n`` table with identity at index 0."""
    if n == 1:
        return np.zeros((1, 1, 1), dtype=np.int64)
    free = (n - 1) ** 2
    base = np.zeros((n, n), dtype=np.int64)
    base[0, :] = np.arange(n)
    base[:, 0] = np.arange(n)
    combos = np.array(list(itertools.product(range(n), repeat=free)), dtype=np.int64)
    tables = np.broadcast_to(base, (len(combos), n, n)).copy()
    tables[:, 1:, 1:] = combos.reshape(-1, n - 1, n - 1)
    ok = np.ones(len(tables), dtype=bool)
    idx = np.arange(len(tables))
    for i, j, k in itertools.product(range(1, n), repeat=3):
        ij = tables[:, i, j]
        jk = tables[:, j, k]
        ok &= tables[idx, ij, k] == tables[idx, i, jk]
    good = tables[ok]
    good.setflags(write=False)
    return good


def all_monoids(n: int) -> Iterator[FiniteMonoid]:
    """All monoid tables on ``0..n-1`` with identity 0 (labelled, not up to isomorphism)."""
    if not 1 <= n <= 4:
        raise ValueError("exhaustive enumeration supports 1 <= n <= 4")
    for k, t in enumerate(_all_tables(n)):
        yield FiniteMonoid([str(i) for i in range(n)], 0, t, name=f"table:{n}#{k}")


def random_table_monoid(n: int, rng: np.random.Generator, max_tries: int = 10**6) -> FiniteMonoid:
    """Rejection sampling over tables with identity 0 (``n <= 4``)."""
    if not 1 <= n <= 4:
        raise ValueError("rejection sampling supports 1 <= n <= 4")
    t = np.zeros((n, n), dtype=np.int64)
    t[0, :] = np.arange(n)
    t[:, 0] = np.arange(n)
    for _ in range(max_tries):
        t[1:, 1:] = rng.integers(0, n, size=(n - 1, n - 1))
        if is_associative_table(t):
            return FiniteMonoid([str(i) for i in range(n)], 0, t.copy(), name=f"random:{n}")
    raise RuntimeError("rejection sampling did not find an associative table")


def random_transformation_monoid(n: int, rng: np.random.Generator, degree: int = 4,
                                 max_tries: int = 10**4) -> FiniteMonoid:
    """Random submonoid of the full transformation monoid with exactly ``n`` elements.

    Used for orders where rejection sampling of raw tables is hopeless.
    """
    ident = tuple(range(degree))
    for _ in range(max_tries):
        elems = [ident]
        seen = {ident}
        gens: list[tuple] = []
        while len(elems) < n:
            g = tuple(int(v) for v in rng.integers(0, degree, size=degree))
            gens.append(g)
            frontier = list(elems)
            while frontier and len(elems) <= n:
                nxt = []
                for f in frontier:
                    for h in gens:
                        comp = tuple(f[h[i]] for i in range(degree))
                        if comp not in seen:
                            seen.add(comp)
                            elems.append(comp)
                            nxt.append(comp)
                frontier = nxt
            if len(elems) > n:
                break
        if len(elems) == n:
            order = {e: i for i, e in enumerate(elems)}
            table = [[order[tuple(f[g[i]] for i in range(degree))] for g in elems] for f in elems]
            return FiniteMonoid([str(i) for i in range(n)], 0, table, name=f"transform:{n}")
    raise RuntimeError(f"no transformation monoid of order {n} found")


def random_monoid(n: int, rng: np.random.Generator) -> FiniteMonoid:
    if n <= 4:
        return random_table_monoid(n, rng)
    return random_transformation_monoid(n, rng)


# --------------------------------------------------------------------------
# URI resolver


def finite_catalog(max_order: int | None = None) -> list[FiniteMonoid]:
    """Every finite catalog entry up to ``max_order`` (default: up to order 6)."""
    out = [zmod(n) for n in range(1, 7)] + [klein(), idem2()]
    out += [saturation(n) for n in range(0, 6)]
    out += [symmetric(k) for k in (1, 2, 3)]
    if max_order is not None:
        out = [m for m in out if m.size <= max_order]
    return out


def get(uri: str):
    """Resolve ``zmod:5``, ``sym:4``, ``sat:3``, ``idem2``, ``klein``,
    ``numerical:2,3``, ``free:ab``, ``bicyclic``, ``mulnat``,
    ``power:<uri>``, ``presented:<path>`` and ``sandwich:<n>``
(the one-relator monoid ``<a, b | b^n = a b^n a>``)."""
    kind, _, arg = uri.strip().partition(":")
    try:
        if kind == "zmod":
            return zmod(int(arg))
        if kind == "sym":
            return symmetric(int(arg))
        if kind == "sat":
            return saturation(int(arg))
        if kind == "idem2" and not arg:
            return idem2()
        if kind == "klein" and not arg:
            return klein()
        if kind == "numerical":
            return NumericalMonoid(int(g) for g in arg.split(","))
        if kind == "free":
            return FreeMonoid(arg)
        if kind == "bicyclic" and not arg:
            return BicyclicMonoid()
        if kind == "mulnat" and not arg:
            return MultiplicativeNaturals()
        if kind == "power":
            from premonoid.power import build

            base = get(arg)
            if not isinstance(base, FiniteMonoid):
                raise MonoidFormatError("power monoids need a finite base")
            return build(base).monoid
        if kind == "presented":
            from premonoid.presentations import PresentedMonoid, parse

            with open(arg, encoding="utf-8") as fh:
                return PresentedMonoid(parse(fh.read()), name=uri)
        if kind == "sandwich":
            from premonoid.presentations import PresentedMonoid, sandwich_presentation

            return PresentedMonoid(sandwich_presentation(int(arg)), name=uri)
    except ValueError as exc:
        raise MonoidFormatError(f"bad catalog entry {uri!r}: {exc}") from None
    raise MonoidFormatError(f"unknown catalog entry {uri!r}")
