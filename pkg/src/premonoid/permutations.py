"""Symmetric groups, the fixed-point premonoid and transposition decompositions."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, replace

import numpy as np

from premonoid.monoid import FiniteMonoid
from premonoid.preorder import PreorderRel, dual, standard_order

MAX_K = 6


@dataclass(frozen=True)
class Permutation:
    """``images[i]`` is the image of point ``i``; points are ``0..k-1``."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        imgs = tuple(int(v) for v in self.images)
        if sorted(imgs) != list(range(len(imgs))):
            raise ValueError(f"{imgs} is not a bijection of 0..{len(imgs) - 1}")
        object.__setattr__(self, "images", imgs)

    @classmethod
    def identity(cls, k: int) -> "Permutation":
        return cls(tuple(range(k)))

    @classmethod
    def transposition(cls, k: int, a: int, b: int) -> "Permutation":
        if a == b:
            raise ValueError("a transposition swaps two distinct points")
        imgs = list(range(k))
        imgs[a], imgs[b] = b, a
        return cls(tuple(imgs))

    @property
    def k(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def is_identity(self) -> bool:
        return all(i == v for i, v in enumerate(self.images))

    def is_transposition(self) -> bool:
        return len(fixed_points(self)) == self.k - 2

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(self.k):
            if start in seen or self.images[start] == start:
                continue
            cyc = [start]
            seen.add(start)
            x = self.images[start]
            while x != start:
                cyc.append(x)
                seen.add(x)
                x = self.images[x]
            out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "id"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)


def compose(f: Permutation, g: Permutation) -> Permutation:
    """``x -> f(g(x))``."""
    if f.k != g.k:
        raise ValueError(f"cannot compose permutations of {f.k} and {g.k} points")
    return Permutation(tuple(f.images[x] for x in g.images))


def fixed_points(f: Permutation) -> frozenset[int]:
    return frozenset(i for i, v in enumerate(f.images) if i == v)


_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, k: int) -> Permutation:
    """Parse ``(0 1 2)(3 4)`` (0-based, whitespace separated); ``id`` or ``()`` is the identity."""
    text = text.strip()
    imgs = list(range(k))
    if text in ("", "id", "()"):
        return Permutation(tuple(imgs))
    rest = _CYCLE.sub("", text).strip()
    if rest:
        raise ValueError(f"unexpected text {rest!r} in cycle notation")
    used: set[int] = set()
    for body in _CYCLE.findall(text):
        pts = [int(tok) for tok in body.split()]
        for p in pts:
            if not 0 <= p < k:
                raise ValueError(f"point {p} outside 0..{k - 1}")
            if p in used:
                raise ValueError(f"point {p} appears twice")
            used.add(p)
        for a, b in zip(pts, pts[1:] + pts[:1]):
            imgs[a] = b
    return Permutation(tuple(imgs))


def smallest_moved_swap(f: Permutation) -> Permutation | None:
    """The transposition exchanging the smallest moved point ``x`` with ``f(x)``."""
    for x, fx in enumerate(f.images):
        if fx != x:
            return Permutation.transposition(f.k, x, fx)
    return None


def decompose(f: Permutation) -> list[Permutation]:
    """Transpositions ``t_1, ..., t_m`` with ``f = t_1 o ... o t_m``.

    Each step peels off ``t`` (see :func:`smallest_moved_swap`) and
    continues with ``t o f``, which fixes strictly more points. The
    identity gives the empty list.
    """
    out = []
    g = f
    while (tau := smallest_moved_swap(g)) is not None:
        out.append(tau)
        g = compose(tau, g)
    return out


def compose_all(perms, k: int) -> Permutation:
    acc = Permutation.identity(k)
    for p in perms:
        acc = compose(acc, p)
    return acc


# --------------------------------------------------------------------------
# as a finite monoid


def symmetric_group(k: int) -> FiniteMonoid:
    """``S_k`` with elements in lexicographic order of their image tuples."""
    if not 0 <= k <= MAX_K:
        raise ValueError(f"symmetric groups are tabulated for k <= {MAX_K}")
    perms = np.array(list(itertools.permutations(range(k))), dtype=np.int64).reshape(-1, k)
    n = len(perms)
    radix = k ** np.arange(k - 1, -1, -1, dtype=np.int64) if k else np.zeros(0, dtype=np.int64)
    keys = perms @ radix  # increasing, since rows are lexicographic
    # prod[i, j, x] = perms[i][perms[j][x]]
    prod = np.take_along_axis(perms[:, None, :].repeat(n, axis=1), perms[None, :, :].repeat(n, axis=0), axis=2)
    table = np.searchsorted(keys, prod @ radix)
    labels = [str(Permutation(tuple(p))) for p in perms]
    m = FiniteMonoid(labels, 0, table, name=f"sym:{k}", facts={"dedekind_finite": True})
    m.permutations = [Permutation(tuple(p)) for p in perms]
    return m


def fixedpoint_premonoid(k: int) -> tuple[FiniteMonoid, PreorderRel]:
    """``S_k`` with ``f <= g`` iff ``|Fix(g)| <= |Fix(f)|``."""
    m = symmetric_group(k)
    counts = [len(fixed_points(p)) for p in m.permutations]
    p = dual(standard_order(counts, m.labels))
    return m, replace(p, kind="fixpoints")


def transposition_splitter(m: FiniteMonoid):
    """Splitter ``f -> (t, t o f)`` for the fixed-point premonoid on ``m = S_k``."""
    perms = m.permutations
    index = {p: i for i, p in enumerate(perms)}

    def split(x: int):
        f = perms[x]
        if f.is_identity() or f.is_transposition():
            return None
        tau = smallest_moved_swap(f)
        return index[tau], index[compose(tau, f)]

    return split
