"""Preorders on carriers: closure, the divisibility family, duals, pullbacks,
minimal elements, heights and chain-condition reports."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable, Iterable, Sequence

import numpy as np

from premonoid.checks import Check, Verdict
from premonoid.monoid import OUTSIDE, Carrier


class PreorderError(ValueError):
    """Bad relation input (unknown element, non-closed input in strict mode)."""


def transitive_closure(holds: np.ndarray) -> np.ndarray:
    """Reflexive-transitive closure by repeated boolean squaring."""
    h = np.array(holds, dtype=bool)
    np.fill_diagonal(h, True)
    f = h.astype(np.float32)
    while True:
        nxt = (f @ f) > 0
        if np.array_equal(nxt, h):
            return h
        h = nxt
        f = h.astype(np.float32)


@dataclass(frozen=True, eq=False)
class PreorderRel:
    """``holds[i, j]`` means element ``i`` is below element ``j``.

    ``exact``: every pair inside the carrier is decided correctly.
    ``down_closed``: strict down-sets of carrier elements stay in the carrier.
    ``whole``: the carrier is the entire underlying set.
    """

    labels: tuple[str, ...]
    holds: np.ndarray
    exact: bool = True
    down_closed: bool = True
    whole: bool = True
    kind: str = "user"
    carrier: Carrier | None = None
    note: str = ""
    meta: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        h = np.array(self.holds, dtype=bool)
        n = len(self.labels)
        if h.shape != (n, n):
            raise PreorderError(f"relation shape {h.shape} does not match {n} elements")
        h.setflags(write=False)
        object.__setattr__(self, "holds", h)
        for hook in _CONSTRUCTION_HOOKS:
            hook(self)

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def certified(self) -> bool:
        return self.exact and self.down_closed

    def leq(self, i: int, j: int) -> bool:
        return bool(self.holds[i, j])

    def strict(self) -> np.ndarray:
        return self.holds & ~self.holds.T

    def equivalence(self) -> np.ndarray:
        return self.holds & self.holds.T

    def lt(self, i: int, j: int) -> bool:
        return bool(self.holds[i, j] and not self.holds[j, i])

    def index(self, label: str) -> int:
        try:
            return self.labels.index(str(label))
        except ValueError:
            raise PreorderError(f"unknown element {label!r}") from None

    def __eq__(self, other) -> bool:
        if not isinstance(other, PreorderRel):
            return NotImplemented
        return self.labels == other.labels and np.array_equal(self.holds, other.holds)

    __hash__ = None  # type: ignore[assignment]


# Test suites register callbacks here to audit every relation ever built.
_CONSTRUCTION_HOOKS: list[Callable[[PreorderRel], None]] = []


def close(pairs: Iterable[tuple[str, str]], labels: Sequence[str], *, strict: bool = False) -> PreorderRel:
    """Least preorder on ``labels`` containing ``pairs``.

    Non-closed input is closed and the fact recorded in ``note``; with
    ``strict=True`` it is rejected instead.
    """
    labels = tuple(str(s) for s in labels)
    pos = {s: i for i, s in enumerate(labels)}
    n = len(labels)
    raw = np.zeros((n, n), dtype=bool)
    for x, y in pairs:
        if x not in pos or y not in pos:
            bad = x if x not in pos else y
            raise PreorderError(f"unknown element {bad!r}")
        raw[pos[x], pos[y]] = True
    return from_matrix(labels, raw, strict=strict)


def from_matrix(labels: Sequence[str], raw, *, strict: bool = False, **flags) -> PreorderRel:
    raw = np.array(raw, dtype=bool)
    closed = transitive_closure(raw)
    was_closed = bool(np.array_equal(closed, raw))
    if strict and not was_closed:
        raise PreorderError("relation is not reflexive and transitive")
    note = "" if was_closed else f"closed input: added {int(closed.sum() - raw.sum())} pairs"
    return PreorderRel(tuple(labels), closed, note=note, meta={"was_closed": was_closed}, **flags)


def parse_preorder_file(text: str, labels: Sequence[str], *, strict: bool = False) -> PreorderRel:
    """Lines ``pair <x> <y>``; ``#`` starts a comment."""
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].split()
        if not line:
            continue
        if line[0] != "pair" or len(line) != 3:
            raise PreorderError(f"line {lineno}: expected 'pair <x> <y>'")
        pairs.append((line[1], line[2]))
    return close(pairs, labels, strict=strict)


# --------------------------------------------------------------------------
# divisibility family


def _flags(m: Carrier) -> dict:
    if m.exhaustive:
        return dict(exact=True, down_closed=True, whole=True)
    return dict(exact=m.certified, down_closed=m.certified, whole=False)


def _right_mult(m: Carrier) -> np.ndarray:
    """``R[w, y]`` iff ``y`` in ``wH`` (within the carrier)."""
    n = m.size
    r = np.zeros((n, n), dtype=bool)
    t = m.table
    rows, cols = np.nonzero(t != OUTSIDE)
    r[rows, t[rows, cols]] = True
    np.fill_diagonal(r, True)
    return r


def _left_mult(m: Carrier) -> np.ndarray:
    """``L[x, w]`` iff ``w`` in ``Hx``."""
    n = m.size
    l = np.zeros((n, n), dtype=bool)
    t = m.table
    us, xs = np.nonzero(t != OUTSIDE)
    l[xs, t[us, xs]] = True
    np.fill_diagonal(l, True)
    return l


def _finish(m: Carrier, raw: np.ndarray, kind: str) -> PreorderRel:
    flags = _flags(m)
    h = raw if flags["exact"] else transitive_closure(raw)
    return PreorderRel(m.labels, h, kind=kind, carrier=m, **flags)


def left_divisibility(m: Carrier) -> PreorderRel:
    """``x`` divides ``y`` from the left iff ``y`` lies in ``xH``."""
    return _finish(m, _right_mult(m), "left")


def right_divisibility(m: Carrier) -> PreorderRel:
    """``x`` divides ``y`` from the right iff ``y`` lies in ``Hx``."""
    return _finish(m, _left_mult(m).copy(), "right")


def divisibility(m: Carrier) -> PreorderRel:
    """``x | y`` iff ``y`` lies in ``HxH``."""
    l = _left_mult(m).astype(np.float32)
    r = _right_mult(m).astype(np.float32)
    return _finish(m, (l @ r) > 0, "div")


def dual(p: PreorderRel) -> PreorderRel:
    """Transpose. Down-sets of the dual are up-sets of ``p``, which windows do not certify."""
    if p.kind.startswith("dual:"):
        kind = p.kind[5:]
        down = p.meta.get("undual_down_closed", p.whole)
    else:
        kind = "dual:" + p.kind
        down = p.whole
    meta = {**p.meta, "undual_down_closed": p.down_closed}
    return replace(p, holds=p.holds.T.copy(), kind=kind, down_closed=down, meta=meta)


def pullback(f: Sequence[int], target: PreorderRel, labels: Sequence[str], **flags) -> PreorderRel:
    """``x <= y`` iff ``f(x) <= f(y)`` in ``target``; ``f`` maps carrier indices to target indices."""
    f = np.asarray(f, dtype=np.int64)
    if len(f) != len(labels):
        raise PreorderError("pullback map must be total on the carrier")
    if len(f) and (f.min() < 0 or f.max() >= target.size):
        raise PreorderError("pullback map leaves the target carrier")
    h = target.holds[np.ix_(f, f)]
    return PreorderRel(tuple(labels), h, kind="pullback", **flags)


def standard_order(values: Sequence[int], labels: Sequence[str] | None = None) -> PreorderRel:
    """The usual order on integers, pulled back to ``labels`` through ``values``."""
    vals = sorted(set(values))
    target = PreorderRel(tuple(map(str, vals)), np.array(vals)[:, None] <= np.array(vals)[None, :], kind="le")
    pos = {v: i for i, v in enumerate(vals)}
    if labels is None:
        labels = [str(v) for v in values]
    return pullback([pos[v] for v in values], target, labels)


def equality(labels: Sequence[str]) -> PreorderRel:
    return PreorderRel(tuple(labels), np.eye(len(labels), dtype=bool), kind="eq")


def total(labels: Sequence[str]) -> PreorderRel:
    n = len(labels)
    return PreorderRel(tuple(labels), np.ones((n, n), dtype=bool), kind="total")


# --------------------------------------------------------------------------
# minimal elements and heights


def minimal_elements(p: PreorderRel, subset: Iterable[int]) -> frozenset[int]:
    """Elements ``x`` of ``subset`` such that ``y <= x`` with ``y`` in ``subset`` forces ``x <= y``."""
    s = np.array(sorted(set(subset)), dtype=np.int64)
    if not len(s):
        raise PreorderError("minimal elements of an empty set")
    sub = p.holds[np.ix_(s, s)]
    strict_below = sub & ~sub.T  # [y, x]: y strictly below x
    return frozenset(int(s[k]) for k in np.flatnonzero(~strict_below.any(axis=0)))


def _down_order(strict: np.ndarray) -> np.ndarray:
    # |strict down-set| grows strictly along the strict order
    return np.argsort(strict.sum(axis=0), kind="stable")


def heights(p: PreorderRel, units: Iterable[int]) -> list[int | None]:
    """Longest descending chain of non-units starting at each element.

    Units get 0. On relations whose down-sets are not certified the
    result is ``None`` (unknown) for every element.
    """
    if not p.certified:
        return [None] * p.size
    unit = np.zeros(p.size, dtype=bool)
    unit[list(units)] = True
    strict = p.strict()
    h = np.zeros(p.size, dtype=np.int64)
    for x in _down_order(strict):
        if unit[x]:
            continue
        below = strict[:, x] & ~unit
        h[x] = 1 + (h[below].max() if below.any() else 0)
    return [int(v) for v in h]


def height(p: PreorderRel, x: int, units: Iterable[int]) -> int | None:
    return heights(p, units)[x]


def longest_strict_chain(p: PreorderRel) -> list[int]:
    """A longest chain ``x_0 > x_1 > ...`` inside the carrier (descending)."""
    strict = p.strict()
    n = p.size
    if n == 0:
        return []
    length = np.zeros(n, dtype=np.int64)
    nxt = np.full(n, -1, dtype=np.int64)
    for x in _down_order(strict):
        below = np.flatnonzero(strict[:, x])
        if len(below):
            best = below[np.argmax(length[below])]
            length[x] = length[best] + 1
            nxt[x] = best
    x = int(np.argmax(length))
    chain = [x]
    while nxt[x] >= 0:
        x = int(nxt[x])
        chain.append(x)
    return chain


@dataclass(frozen=True)
class ChainReport:
    verdict: Verdict
    chain: tuple[int, ...]
    note: str = ""
    known: bool | None = None
    length_function_checked: bool | None = None

    @property
    def holds(self) -> bool | None:
        if self.verdict is Verdict.REFUTED:
            return False
        if self.verdict is Verdict.VERIFIED or self.known:
            return True
        return None


def _fact_key(kind: str) -> str:
    if kind.startswith("dual:"):
        return "noetherian:" + kind[5:]
    return "artinian:" + kind


def artinian_report(p: PreorderRel) -> ChainReport:
    """No infinite strictly descending chain.

    Finite carriers are always artinian (strict part is a finite DAG);
    on windows the verdict is unknown and the longest observed chain is
    returned, together with whatever the backend knows by theory.
    """
    chain = tuple(longest_strict_chain(p))
    if p.whole:
        return ChainReport(Verdict.VERIFIED, chain, note="finite carrier: strict part is a finite DAG")
    facts = p.carrier.facts if p.carrier is not None else {}
    known = facts.get(_fact_key(p.kind))
    checked = None
    note = f"window only; longest observed strict chain has {len(chain)} elements"
    if p.kind in ("div", "left", "right") and facts.get("grade_is_length_function"):
        grade = p.carrier.source.grade
        elems = p.carrier.elements
        g = np.array([grade(e) for e in elems])
        ys, xs = np.nonzero(p.strict())
        checked = bool((g[ys] < g[xs]).all())
        known = True
        note += "; grade is a length function (strictly increasing along strict pairs)"
    return ChainReport(Verdict.UNKNOWN, chain, note=note, known=known, length_function_checked=checked)


def noetherian_report(p: PreorderRel) -> ChainReport:
    return artinian_report(dual(p))


# --------------------------------------------------------------------------
# compatibility with the product


def is_preordered_monoid(m: Carrier, p: PreorderRel) -> Check:
    """``x <= u`` and ``y <= v`` imply ``xy <= uv``.

    By transitivity it suffices to test one side at a time:
    ``x <= u`` gives ``xy <= uy`` and ``y <= v`` gives ``xy <= xv``.
    Witness: ``(x, y, u, v)``.
    """
    t = m.table
    h = p.holds
    n = m.size
    for a in range(n):
        for b in np.flatnonzero(h[a]):
            b = int(b)
            if a == b:
                continue
            # right multiplication: a*y <= b*y
            ay, by = t[a], t[b]
            ok = (ay != OUTSIDE) & (by != OUTSIDE)
            bad = np.flatnonzero(ok & ~h[np.where(ok, ay, 0), np.where(ok, by, 0)])
            if len(bad):
                y = int(bad[0])
                return Check(Verdict.REFUTED, (a, y, b, y), note="x<=u, y<=v but xy !<= uv")
            # left multiplication: x*a <= x*b
            xa, xb = t[:, a], t[:, b]
            ok = (xa != OUTSIDE) & (xb != OUTSIDE)
            bad = np.flatnonzero(ok & ~h[np.where(ok, xa, 0), np.where(ok, xb, 0)])
            if len(bad):
                x = int(bad[0])
                return Check(Verdict.REFUTED, (x, a, x, b), note="x<=u, y<=v but xy !<= uv")
    if p.whole and m.exhaustive:
        return Check(Verdict.VERIFIED)
    return Check(Verdict.UNKNOWN, note="holds on window", extra={"window_pass": True})


def is_linearly_preordered(m: Carrier, p: PreorderRel) -> Check:
    """Preordered, total, and ``x < y`` implies ``uxv < uyv``."""
    base = is_preordered_monoid(m, p)
    if base.verdict is Verdict.REFUTED:
        return base
    h = p.holds
    incomparable = np.argwhere(~h & ~h.T)
    if len(incomparable):
        x, y = (int(v) for v in incomparable[0])
        return Check(Verdict.REFUTED, (x, y), note="not total")
    t = m.table
    strict = p.strict()
    for x, y in np.argwhere(strict):
        ux, uy = t[:, x], t[:, y]
        ok_u = (ux != OUTSIDE) & (uy != OUTSIDE)
        for u in np.flatnonzero(ok_u):
            a, b = t[ux[u]], t[uy[u]]
            ok = (a != OUTSIDE) & (b != OUTSIDE)
            bad = np.flatnonzero(ok & ~strict[np.where(ok, a, 0), np.where(ok, b, 0)])
            if len(bad):
                return Check(Verdict.REFUTED, (int(u), int(x), int(y), int(bad[0])),
                             note="x<y but uxv !< uyv")
    if p.whole and m.exhaustive:
        return Check(Verdict.VERIFIED)
    return Check(Verdict.UNKNOWN, note="holds on window", extra={"window_pass": True})
