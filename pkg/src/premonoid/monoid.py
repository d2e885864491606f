"""Monoid carriers and structural predicates.

Two kinds of carrier share one interface (``labels``, ``identity``,
``table``, ``exhaustive``, ``certified``):

* :class:`FiniteMonoid` -- a full Cayley table; every answer is exact.
* :class:`Window` -- a finite snapshot of an :class:`EnumerableMonoid`.
  Products that leave the window are stored as ``-1``. A window cut from a
  :class:`GradedMonoid` is *certified*: every factorization ``y = u x v`` of
  a window element ``y`` has all of ``u, x, v`` (and the partial products)
  inside the window, so divisor and factor-pair questions about window
  elements are answered exactly.

Elements are referred to by their integer index in the carrier.
"""

from __future__ import annotations

import abc
from dataclasses import dataclass
from typing import Any, Callable, Hashable, Iterable, Mapping, Sequence

import numpy as np

from premonoid.checks import Check, Verdict

OUTSIDE = -1


class MonoidFormatError(ValueError):
    """Malformed table or monoid file."""


@dataclass(frozen=True)
class ElementSet:
    """A set of carrier indices plus the bookkeeping windows need."""

    members: frozenset[int]
    uncertified: frozenset[int] = frozenset()
    truncated: bool = False

    def __contains__(self, i: int) -> bool:
        return i in self.members

    def __iter__(self):
        return iter(sorted(self.members))

    def __len__(self) -> int:
        return len(self.members)


class Carrier:
    labels: tuple[str, ...]
    identity: int
    table: np.ndarray
    exhaustive: bool = True
    certified: bool = True
    facts: Mapping[str, bool] = {}

    def __init__(self, labels: Sequence[str], identity: int, table) -> None:
        labels = tuple(str(s) for s in labels)
        if len(set(labels)) != len(labels):
            raise MonoidFormatError("element labels must be pairwise distinct")
        try:
            arr = np.array(table, dtype=np.int64)
        except (ValueError, TypeError) as exc:
            raise MonoidFormatError(f"table is not a rectangular integer matrix: {exc}") from None
        n = len(labels)
        if n == 0:
            raise MonoidFormatError("a monoid needs at least its identity")
        if arr.shape != (n, n):
            raise MonoidFormatError(f"table has shape {arr.shape}, expected {(n, n)}")
        if not 0 <= identity < n:
            raise MonoidFormatError(f"identity index {identity} out of range")
        self.labels = labels
        self.identity = int(identity)
        arr.setflags(write=False)
        self.table = arr
        self._index = {s: i for i, s in enumerate(labels)}

    @property
    def size(self) -> int:
        return len(self.labels)

    def __len__(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self._index[str(label)]
        except KeyError:
            raise KeyError(f"unknown element {label!r}") from None

    def label(self, i: int) -> str:
        return self.labels[i]

    def mul(self, i: int, j: int) -> int:
        if i == OUTSIDE or j == OUTSIDE:
            return OUTSIDE
        return int(self.table[i, j])

    def product(self, factors: Iterable[int]) -> int:
        acc = self.identity
        for f in factors:
            acc = self.mul(acc, f)
            if acc == OUTSIDE:
                break
        return acc

    def nonunit_certificates(self) -> np.ndarray:
        """Boolean mask of elements known not to be units without search."""
        return np.zeros(self.size, dtype=bool)


class FiniteMonoid(Carrier):
    """Cayley-table monoid: ``table[i][j]`` is the index of ``i * j``."""

    exhaustive = True
    certified = True

    def __init__(self, labels, identity, table, *, name: str = "", facts=None) -> None:
        super().__init__(labels, identity, table)
        if (self.table < 0).any() or (self.table >= self.size).any():
            raise MonoidFormatError("table entry out of range")
        self.name = name
        self.facts = dict(facts or {})

    def __repr__(self) -> str:
        return f"FiniteMonoid({self.name or self.size})"

    @classmethod
    def from_function(
        cls,
        elements: Sequence[Hashable],
        op: Callable[[Any, Any], Any],
        identity: Hashable,
        *,
        label: Callable[[Any], str] = str,
        name: str = "",
        facts=None,
    ) -> "FiniteMonoid":
        index = {e: i for i, e in enumerate(elements)}
        table = [[index[op(x, y)] for y in elements] for x in elements]
        return cls([label(e) for e in elements], index[identity], table, name=name, facts=facts)

    def to_text(self) -> str:
        lines = ["elements: " + " ".join(self.labels), "identity: " + self.labels[self.identity]]
        for i, s in enumerate(self.labels):
            lines.append(f"row {s}: " + " ".join(self.labels[j] for j in self.table[i]))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, *, name: str = "") -> "FiniteMonoid":
        return parse_monoid(text, name=name)


@dataclass(frozen=True)
class ValidityReport:
    ok: bool
    law: str | None = None
    witness: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.ok


def validate(m: Carrier) -> ValidityReport:
    """Check the identity law and associativity, returning the first violation.

    On windows only products that stay inside the window are compared; a
    triple where exactly one bracketing escapes still counts as a violation.
    """
    t = m.table
    e = m.identity
    n = m.size
    for j in range(n):
        if t[e, j] != j:
            return ValidityReport(False, "left identity", (e, j))
        if t[j, e] != j:
            return ValidityReport(False, "right identity", (j, e))
    partial = bool((t == OUTSIDE).any())
    for i in range(n):
        row = t[i]
        if not partial:
            # (i*j)*k versus i*(j*k) for all j, k at once
            bad = np.argwhere(t[row] != row[t])
        else:
            ok_j = row != OUTSIDE
            lhs = np.where(ok_j[:, None], t[np.where(ok_j, row, 0)], OUTSIDE)
            jk = t
            rhs = np.where(jk != OUTSIDE, row[np.where(jk != OUTSIDE, jk, 0)], OUTSIDE)
            comparable = ok_j[:, None] & (jk != OUTSIDE)
            bad = np.argwhere(comparable & (lhs != rhs))
        if len(bad):
            j, k = bad[0]
            return ValidityReport(False, "associativity", (i, int(j), int(k)))
    return ValidityReport(True)


def is_associative_table(t: np.ndarray) -> bool:
    for i in range(t.shape[0]):
        if not np.array_equal(t[t[i]], t[i][t]):
            return False
    return True


# --------------------------------------------------------------------------
# enumerable and graded backends


class EnumerableMonoid(abc.ABC):
    """An infinite (or large) monoid explored through finite windows."""

    name: str = ""
    facts: Mapping[str, bool] = {}

    @property
    @abc.abstractmethod
    def identity(self) -> Any: ...

    @abc.abstractmethod
    def op(self, x, y) -> Any: ...

    def eq(self, x, y) -> bool:
        return x == y

    @abc.abstractmethod
    def enumerate(self, bound: int) -> list:
        """Canonical elements within the exploration bound, monotone in ``bound``."""

    def encode(self, x) -> str:
        return str(x)

    @abc.abstractmethod
    def decode(self, s: str) -> Any: ...

    def certified_nonunit(self, x) -> bool:
        return False

    def window(self, bound: int) -> "Window":
        return Window(self, bound)


class GradedMonoid(EnumerableMonoid):
    """Enumerable monoid with ``grade(x*y) >= max(grade(x), grade(y))``."""

    @abc.abstractmethod
    def grade(self, x) -> int: ...

    def certified_nonunit(self, x) -> bool:
        return self.grade(x) > 0


class Window(Carrier):
    """Finite snapshot of an enumerable monoid; escaping products are ``-1``."""

    exhaustive = False

    def __init__(self, source: EnumerableMonoid, bound: int) -> None:
        if bound < 0:
            raise ValueError("window bound must be non-negative")
        elems = list(source.enumerate(bound))
        labels = [source.encode(x) for x in elems]
        pos = {s: i for i, s in enumerate(labels)}
        ident = pos.get(source.encode(source.identity))
        if ident is None:
            raise MonoidFormatError("window does not contain the identity")
        n = len(elems)
        table = np.full((n, n), OUTSIDE, dtype=np.int64)
        for i, x in enumerate(elems):
            for j, y in enumerate(elems):
                table[i, j] = pos.get(source.encode(source.op(x, y)), OUTSIDE)
        super().__init__(labels, ident, table)
        self.source = source
        self.bound = bound
        self.elements = elems
        self.certified = isinstance(source, GradedMonoid)
        self.facts = dict(source.facts)
        self.name = f"{source.name or type(source).__name__}[<= {bound}]"

    def __repr__(self) -> str:
        return f"Window({self.name})"

    def element(self, i: int):
        return self.elements[i]

    def nonunit_certificates(self) -> np.ndarray:
        return np.array([self.source.certified_nonunit(x) for x in self.elements], dtype=bool)


# --------------------------------------------------------------------------
# structural predicates


def _unit_mask(m: Carrier) -> np.ndarray:
    t = m.table
    e = m.identity
    right = t == e
    return (right & right.T).any(axis=1)


def units(m: Carrier) -> ElementSet:
    """Units of ``m``; on uncertified windows, unmatched elements are flagged."""
    mask = _unit_mask(m)
    found = frozenset(int(i) for i in np.flatnonzero(mask))
    if m.exhaustive or m.certified:
        return ElementSet(found)
    known_non = m.nonunit_certificates()
    unsure = frozenset(int(i) for i in np.flatnonzero(~mask & ~known_non))
    return ElementSet(found, uncertified=unsure)


def nonunit_mask(m: Carrier) -> np.ndarray:
    """Elements certified to be non-units (exact on finite and certified carriers)."""
    if m.exhaustive or m.certified:
        return ~_unit_mask(m)
    return m.nonunit_certificates() & ~_unit_mask(m)


def is_dedekind_finite(m: Carrier) -> Check:
    t = m.table
    e = m.identity
    hits = np.argwhere((t == e) & (t.T != e))
    if len(hits):
        x, y = (int(v) for v in hits[0])
        return Check(Verdict.REFUTED, (x, y), note="x*y = 1 but y*x != 1")
    if m.exhaustive:
        return Check(Verdict.VERIFIED, known=m.facts.get("dedekind_finite"))
    if m.certified:
        return Check(Verdict.VERIFIED, note="all factor pairs of 1 lie in the graded window")
    return Check(Verdict.UNKNOWN, note="no witness in window", known=m.facts.get("dedekind_finite"))


def is_cancellative(m: Carrier) -> Check:
    t = m.table
    n = m.size
    for z in range(n):
        for col, side in ((t[:, z], "x*z = y*z"), (t[z, :], "z*x = z*y")):
            seen: dict[int, int] = {}
            for x in range(n):
                v = int(col[x])
                if v == OUTSIDE:
                    continue
                if v in seen:
                    return Check(Verdict.REFUTED, (seen[v], x, z), note=f"{side} with x != y")
                seen[v] = x
    return _no_witness(m, "cancellative")


def is_unit_cancellative(m: Carrier) -> Check:
    t = m.table
    nonunit = nonunit_mask(m)
    xs = np.arange(m.size)
    for y in np.flatnonzero(nonunit):
        for prod, side in ((t[:, y], "x*y = x"), (t[y, :], "y*x = x")):
            hit = np.flatnonzero(prod == xs)
            if len(hit):
                return Check(Verdict.REFUTED, (int(hit[0]), int(y)), note=f"{side} with y a non-unit")
    return _no_witness(m, "unit_cancellative")


def is_acyclic(m: Carrier) -> Check:
    t = m.table
    nonunit = nonunit_mask(m)
    n = m.size
    for x in range(n):
        ux = t[:, x]
        us = np.flatnonzero(ux != OUTSIDE)
        if not len(us):
            continue
        rows = t[ux[us]]  # rows[a, v] = (u_a * x) * v
        hits = np.argwhere(rows == x)
        for a, v in hits:
            u = int(us[a])
            if nonunit[u] or nonunit[v]:
                return Check(Verdict.REFUTED, (u, x, int(v)), note="u*x*v = x with u or v a non-unit")
    return _no_witness(m, "acyclic")


def _no_witness(m: Carrier, fact: str) -> Check:
    if m.exhaustive:
        return Check(Verdict.VERIFIED, known=m.facts.get(fact))
    known = m.facts.get(fact)
    note = "no witness in window"
    if known:
        note += "; holds by theory for this backend"
    return Check(Verdict.UNKNOWN, note=note, known=known)


def idempotents(m: Carrier) -> ElementSet:
    d = np.diagonal(m.table)
    return ElementSet(frozenset(int(i) for i in np.flatnonzero(d == np.arange(m.size))))


def proper_idempotents(m: Carrier) -> ElementSet:
    return ElementSet(idempotents(m).members - {m.identity})


def _closure(m: Carrier, gens: Iterable[int], start: Iterable[int]) -> ElementSet:
    gens = sorted(set(gens))
    seen = set(start)
    frontier = list(seen)
    truncated = False
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = int(m.table[x, g])
                if y == OUTSIDE:
                    truncated = True
                elif y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return ElementSet(frozenset(seen), truncated=truncated and not m.exhaustive)


def submonoid_closure(m: Carrier, gens: Iterable[int]) -> ElementSet:
    """Least subset containing the identity and ``gens`` closed under the product."""
    return _closure(m, gens, [m.identity])


def semigroup_closure(m: Carrier, gens: Iterable[int]) -> ElementSet:
    """All non-empty products of elements of ``gens``."""
    gens = list(gens)
    return _closure(m, gens, gens)


# --------------------------------------------------------------------------
# text format


def parse_monoid(text: str, *, name: str = "") -> FiniteMonoid:
    """Parse the ``elements:`` / ``identity:`` / ``row x:`` format."""
    elements: list[str] | None = None
    identity: str | None = None
    rows: dict[str, list[str]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, sep, rest = line.partition(":")
        if not sep:
            raise MonoidFormatError(f"line {lineno}: expected 'key: values'")
        head = head.strip()
        values = rest.split()
        if head == "elements":
            if elements is not None:
                raise MonoidFormatError(f"line {lineno}: duplicate elements line")
            elements = values
        elif head == "identity":
            if len(values) != 1:
                raise MonoidFormatError(f"line {lineno}: identity takes one name")
            identity = values[0]
        elif head.startswith("row "):
            key = head[4:].strip()
            if key in rows:
                raise MonoidFormatError(f"line {lineno}: duplicate row {key!r}")
            rows[key] = values
        else:
            raise MonoidFormatError(f"line {lineno}: unknown key {head!r}")
    if elements is None or identity is None:
        raise MonoidFormatError("missing elements or identity line")
    index = {s: i for i, s in enumerate(elements)}
    if len(index) != len(elements):
        raise MonoidFormatError("element names must be distinct")
    if identity not in index:
        raise MonoidFormatError(f"identity {identity!r} is not an element")
    if set(rows) != set(elements):
        missing = sorted(set(elements) - set(rows))
        extra = sorted(set(rows) - set(elements))
        raise MonoidFormatError(f"rows do not match elements (missing {missing}, unknown {extra})")
    table = []
    for s in elements:
        row = rows[s]
        if len(row) != len(elements):
            raise MonoidFormatError(f"row {s!r} has {len(row)} entries, expected {len(elements)}")
        try:
            table.append([index[v] for v in row])
        except KeyError as exc:
            raise MonoidFormatError(f"row {s!r}: unknown element {exc.args[0]!r}") from None
    return FiniteMonoid(elements, index[identity], table, name=name)
