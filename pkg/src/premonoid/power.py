"""Reduced power monoids: subsets of a finite monoid containing the identity,
under setwise multiplication, with checks of their factorization behaviour."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from premonoid.checks import Check, Verdict
from premonoid.classify import classify
from premonoid.factorize import verify_irreducible_factorability
from premonoid.monoid import (
    FiniteMonoid,
    is_dedekind_finite,
    proper_idempotents,
    semigroup_closure,
    units,
)
from premonoid.preorder import artinian_report, divisibility

DEFAULT_CAP = 2**14
MATERIALIZE_MAX_BASE = 8


class PowerSizeError(ValueError):
    pass


def _popcount(x: int) -> int:
    return bin(x).count("1")


@dataclass
class PowerMonoid:
    """Elements are bitmasks over base indices with the identity bit set."""

    base: FiniteMonoid
    masks: tuple[int, ...]
    translate: np.ndarray  # translate[x, Y] = mask of {x*y : y in Y}, for every mask Y
    monoid: FiniteMonoid | None = None
    index: dict[int, int] = field(default_factory=dict)

    def mul(self, X: int, Y: int) -> int:
        out = 0
        x = X
        while x:
            low = x & -x
            out |= int(self.translate[low.bit_length() - 1, Y])
            x ^= low
        return out

    def label(self, mask: int) -> str:
        return subset_label(self.base, mask)

    def mask_of(self, members) -> int:
        mask = 1 << self.base.identity
        for s in members:
            mask |= 1 << (s if isinstance(s, int) else self.base.index(s))
        return mask

    def element(self, members) -> int:
        """Index in :attr:`monoid` of the subset ``members`` (identity added)."""
        return self.index[self.mask_of(members)]

    def members(self, mask: int) -> list[int]:
        return [i for i in range(self.base.size) if mask >> i & 1]


def subset_label(base: FiniteMonoid, mask: int) -> str:
    return "{" + ",".join(base.labels[i] for i in range(base.size) if mask >> i & 1) + "}"


def build(base: FiniteMonoid, cap: int = DEFAULT_CAP) -> PowerMonoid:
    """The reduced power monoid of ``base``; the table is materialized for
    bases of order at most 8, larger ones only support :meth:`PowerMonoid.mul`."""
    n = base.size
    count = 1 << (n - 1)
    if count > cap:
        raise PowerSizeError(f"power monoid would have {count} elements, above the cap {cap}")
    e = base.identity
    masks = tuple(mk for mk in range(1 << n) if mk >> e & 1)
    t = base.table
    # translate[x, Y] built by peeling the lowest bit of Y
    translate = np.zeros((n, 1 << n), dtype=np.int64)
    for Y in range(1, 1 << n):
        low = (Y & -Y).bit_length() - 1
        translate[:, Y] = translate[:, Y & (Y - 1)] | (1 << t[:, low])
    pm = PowerMonoid(base, masks, translate)
    pm.index = {mk: i for i, mk in enumerate(masks)}
    if n <= MATERIALIZE_MAX_BASE:
        arr = np.array(masks, dtype=np.int64)
        lookup = np.full(1 << n, -1, dtype=np.int64)
        lookup[arr] = np.arange(len(arr))
        table = np.zeros((len(arr), len(arr)), dtype=np.int64)
        for i, X in enumerate(masks):
            acc = np.zeros(len(arr), dtype=np.int64)
            for x in range(n):
                if X >> x & 1:
                    acc |= translate[x, arr]
            table[i] = lookup[acc]
        pm.monoid = FiniteMonoid(
            [subset_label(base, mk) for mk in masks], pm.index[1 << e], table,
            name=f"power:{base.name or n}", facts={"dedekind_finite": True},
        )
        pm.monoid.power = pm
    return pm


def _need_table(pm: PowerMonoid) -> FiniteMonoid:
    if pm.monoid is None:
        raise PowerSizeError(f"checks need a materialized table (base order <= {MATERIALIZE_MAX_BASE})")
    return pm.monoid


# --------------------------------------------------------------------------
# checks


@dataclass
class IdempotentFreeReport:
    applicable: bool
    proper_idempotents: frozenset[int]
    dedekind_finite: Check | None = None
    all_units: bool | None = None
    non_unit: int | None = None

    @property
    def ok(self) -> bool:
        if not self.applicable:
            return True
        return self.dedekind_finite.verdict is Verdict.VERIFIED and bool(self.all_units)


def check_idempotent_free(base: FiniteMonoid) -> IdempotentFreeReport:
    """A finite monoid without proper idempotents is Dedekind-finite, and
    since every cyclic subsemigroup is finite, every element is a unit."""
    idem = frozenset(proper_idempotents(base).members)
    if idem:
        return IdempotentFreeReport(False, idem)
    us = units(base).members
    outside = [i for i in range(base.size) if i not in us]
    return IdempotentFreeReport(True, idem, is_dedekind_finite(base), not outside,
                                outside[0] if outside else None)


@dataclass
class PowerFactorabilityReport:
    reduced: bool
    dedekind_finite: Check
    artinian: bool
    size_monotone: tuple | None  # witness (X, Y) with |XY| < max(|X|, |Y|)
    divides_contained: tuple | None  # witness (X, Y) with X | Y but X not inside Y
    factorable: Verdict
    uncovered: int | None
    irreducibles: frozenset[int]
    quarks: frozenset[int]

    @property
    def part_i(self) -> bool:
        return (self.reduced and self.dedekind_finite.verdict is Verdict.VERIFIED and self.artinian
                and self.size_monotone is None and self.divides_contained is None)

    @property
    def part_ii(self) -> bool:
        return self.factorable is Verdict.VERIFIED

    @property
    def part_iii(self) -> bool:
        return self.irreducibles == self.quarks

    @property
    def ok(self) -> bool:
        return self.part_i and self.part_ii and self.part_iii


def verify_power_factorability(base: FiniteMonoid, pm: PowerMonoid | None = None) -> PowerFactorabilityReport:
    """Reduced, Dedekind-finite, artinian divisibility; every element a product
    of divisibility irreducibles; irreducibles are exactly the quarks."""
    pm = pm or build(base)
    P = _need_table(pm)
    reduced = units(P).members == frozenset({P.identity})
    df = is_dedekind_finite(P)
    div = divisibility(P)
    art = artinian_report(div).verdict is Verdict.VERIFIED
    arr = np.array(pm.masks, dtype=np.int64)
    sizes = np.array([_popcount(int(mk)) for mk in arr])
    prod_sizes = sizes[P.table]
    bad = np.argwhere(prod_sizes < np.maximum(sizes[:, None], sizes[None, :]))
    mono = tuple(int(v) for v in bad[0]) if len(bad) else None
    contained = (arr[:, None] & ~arr[None, :]) == 0  # X subset of Y
    bad = np.argwhere(div.holds & ~contained)
    sub = tuple(int(v) for v in bad[0]) if len(bad) else None
    fact = verify_irreducible_factorability(P, div)
    rep = classify(P, div, primes=False)
    return PowerFactorabilityReport(
        reduced, df, art, mono, sub, fact.verdict, fact.uncovered,
        frozenset(rep.members("irreducible").members), frozenset(rep.members("quark").members),
    )


@dataclass
class AtomicityReport:
    cond_a: bool
    cond_b: bool
    cond_c: bool
    witness_a: int | None  # base element x != 1 with x^2 in {1, x}
    witness_b: int | None  # power-monoid element that is a quark xor an atom
    witness_c: int | None  # power-monoid element not a product of atoms
    atoms: frozenset[int]
    quarks: frozenset[int]

    @property
    def equivalent(self) -> bool:
        return self.cond_a == self.cond_b == self.cond_c


def check_atomicity_criterion(base: FiniteMonoid, pm: PowerMonoid | None = None) -> AtomicityReport:
    """Three conditions computed independently:
    (a) ``x^2`` is neither 1 nor ``x`` for every ``x != 1`` in the base;
    (b) divisibility quarks and atoms of the power monoid coincide;
    (c) every element of the power monoid is a product of atoms."""
    pm = pm or build(base)
    P = _need_table(pm)
    e = base.identity
    sq = np.diagonal(base.table)
    idx = np.arange(base.size)
    bad_a = np.flatnonzero((idx != e) & ((sq == e) | (sq == idx)))
    rep = classify(P, divisibility(P), primes=False)
    quarks = frozenset(rep.members("quark").members)
    atoms = frozenset(rep.members("classical_atom").members)
    diff = sorted(quarks ^ atoms)
    nonunits = [i for i in range(P.size) if i != P.identity]
    closure = semigroup_closure(P, atoms).members
    missing = [i for i in nonunits if i not in closure]
    return AtomicityReport(
        cond_a=not len(bad_a), cond_b=not diff, cond_c=not missing,
        witness_a=int(bad_a[0]) if len(bad_a) else None,
        witness_b=diff[0] if diff else None,
        witness_c=missing[0] if missing else None,
        atoms=atoms, quarks=quarks,
    )
