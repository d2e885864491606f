"""Factorizations: closure test for factorability into irreducibles,
bounded enumeration, height-bounded quark factorization driven by a
splitter, chain-condition wiring and the atomicity conditions for
unit-cancellative / acyclic monoids."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

import numpy as np

from premonoid.checks import Check, Verdict, conjunction
from premonoid.classify import ClassificationReport, classify
from premonoid.monoid import (
    OUTSIDE,
    Carrier,
    is_acyclic,
    is_unit_cancellative,
    semigroup_closure,
)
from premonoid.preorder import (
    ChainReport,
    PreorderRel,
    artinian_report,
    divisibility,
    left_divisibility,
    right_divisibility,
)

DEFAULT_MAX_COUNT = int(os.environ.get("PREMONOID_MAX_COUNT", 10_000))

Splitter = Callable[[int], Optional[tuple[int, int]]]


class FactorizationError(ValueError):
    pass


class DomainError(FactorizationError):
    """The element is a unit for the preorder, so there is nothing to factor."""


class ContractError(FactorizationError):
    """The splitter returned a pair violating its contract."""


class HypothesisError(FactorizationError):
    """No admissible split exists at a non-quark non-unit."""


@dataclass(frozen=True)
class FactorizationWitness:
    target: int
    factors: tuple[int, ...]
    class_tag: str

    @classmethod
    def build(cls, m: Carrier, target: int, factors: Iterable[int], class_tag: str,
              members: Iterable[int] | None = None) -> "FactorizationWitness":
        factors = tuple(int(f) for f in factors)
        if not factors:
            raise FactorizationError("a factorization has at least one factor")
        if m.product(factors) != target:
            raise FactorizationError(f"factors {factors} do not multiply to {target}")
        if members is not None:
            allowed = set(members)
            stray = [f for f in factors if f not in allowed]
            if stray:
                raise FactorizationError(f"factor {stray[0]} is not in class {class_tag!r}")
        return cls(int(target), factors, class_tag)

    def __len__(self) -> int:
        return len(self.factors)

    def to_dict(self, labels) -> dict:
        return {"kind": "factorization", "target": labels[self.target],
                "factors": [labels[f] for f in self.factors], "class": self.class_tag}


# --------------------------------------------------------------------------
# factorability into irreducibles


@dataclass(frozen=True)
class FactorabilityReport:
    verdict: Verdict
    uncovered: int | None
    generators: frozenset[int]
    nonunits: frozenset[int]
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.verdict is not Verdict.REFUTED


def _factorability(m: Carrier, report: ClassificationReport, flag: str) -> FactorabilityReport:
    gens = frozenset(report.members(flag).members)
    nonunits = frozenset(i for i, v in enumerate(report.flags["unit"]) if v is False)
    closure = semigroup_closure(m, gens)
    missing = sorted(nonunits - closure.members)
    if not report.exact:
        note = "window is not certified; membership checked relative to the window only"
        return FactorabilityReport(Verdict.UNKNOWN, missing[0] if missing else None, gens, nonunits, note)
    if missing:
        return FactorabilityReport(Verdict.REFUTED, missing[0], gens, nonunits,
                                   f"non-unit outside the closure of the {flag} class")
    note = "" if m.exhaustive else "every non-unit inside the window"
    return FactorabilityReport(Verdict.VERIFIED, None, gens, nonunits, note)


def verify_irreducible_factorability(m: Carrier, p: PreorderRel) -> FactorabilityReport:
    """Every preorder non-unit is a non-empty product of preorder irreducibles.

    Checked by exact closure membership; the artinian hypothesis is automatic
    on finite carriers.
    """
    return _factorability(m, classify(m, p, primes=False), "irreducible")


def verify_atomic(m: Carrier, p: PreorderRel) -> FactorabilityReport:
    return _factorability(m, classify(m, p, primes=False), "atom")


# --------------------------------------------------------------------------
# enumeration


class FactorizationList(list):
    truncated: bool = False


def enumerate_factorizations(
    m: Carrier,
    a: int,
    A: Iterable[int],
    max_len: int | None = None,
    max_count: int = DEFAULT_MAX_COUNT,
    class_tag: str = "given",
) -> FactorizationList:
    """Sequences over ``A`` multiplying to ``a``: shortest first, then
    lexicographic by element index. The empty sequence is never listed."""
    gens = sorted(set(int(x) for x in A))
    max_len = m.size if max_len is None else max_len
    out = FactorizationList()
    if not gens or max_len < 1:
        return out
    t = m.table
    gen_arr = np.array(gens)
    # reach[r]: elements that are products of exactly r generators
    reach = [np.zeros(m.size, dtype=bool)]
    reach[0][m.identity] = True
    for _ in range(max_len):
        prev = np.flatnonzero(reach[-1])
        prods = t[np.ix_(prev, gen_arr)].ravel()
        nxt = np.zeros(m.size, dtype=bool)
        nxt[prods[prods != OUTSIDE]] = True
        reach.append(nxt)

    def can_finish(prefix: int, r: int) -> bool:
        tails = np.flatnonzero(reach[r])
        vals = t[prefix, tails]
        return bool((vals == a).any())

    def extend(prefix: int, seq: list[int], r: int) -> bool:
        if r == 0:
            if prefix == a:
                out.append(FactorizationWitness.build(m, a, seq, class_tag))
                if len(out) >= max_count:
                    out.truncated = True
                    return False
            return True
        for g in gens:
            nxt = int(t[prefix, g])
            if nxt == OUTSIDE or not can_finish(nxt, r - 1):
                continue
            seq.append(g)
            go_on = extend(nxt, seq, r - 1)
            seq.pop()
            if not go_on:
                return False
        return True

    for length in range(1, max_len + 1):
        if not extend(m.identity, [], length):
            break
    return out


# --------------------------------------------------------------------------
# height-bounded quark factorization


def quark_factorization(m: Carrier, p: PreorderRel, x: int, splitter: Splitter,
                        report: ClassificationReport | None = None) -> FactorizationWitness:
    """Factor ``x`` into at most ``hgt(x)`` quarks.

    Quarks are returned as themselves; anything else is split by
    ``splitter`` into ``(y, z)`` and both halves are factored in turn. The
    splitter contract (non-units below ``x`` whose product is ``x`` and whose
    heights add up to at most ``hgt(x)``) is re-checked at every step.
    """
    rep = report if report is not None else classify(m, p, primes=False)
    unit, quark, hgt = rep.flags["unit"], rep.flags["quark"], rep.heights
    if unit[x] is not False:
        raise DomainError(f"{m.labels[x]} is a unit for this preorder" if unit[x] else
                          f"unit status of {m.labels[x]} is not certified")
    h = p.holds

    def go(v: int) -> list[int]:
        if quark[v] is True:
            return [v]
        if hgt[v] is None or quark[v] is None:
            raise HypothesisError(f"height of {m.labels[v]} is not certified")
        pair = splitter(v)
        if pair is None:
            raise HypothesisError(f"no admissible split at {m.labels[v]}")
        y, z = pair
        if unit[y] is not False or unit[z] is not False:
            raise ContractError("split factors must be non-units")
        if not (h[y, v] and h[z, v]):
            raise ContractError("split factors must lie below the element")
        if m.mul(y, z) != v:
            raise ContractError("split factors must multiply to the element")
        if hgt[y] + hgt[z] > hgt[v]:
            raise ContractError("heights of the split factors exceed the height of the element")
        return go(y) + go(z)

    factors = go(x)
    if len(factors) > hgt[x]:
        raise AssertionError("quark factorization longer than the height")
    return FactorizationWitness.build(m, x, factors, "quarks", rep.members("quark"))


def brute_splitter(m: Carrier, p: PreorderRel, report: ClassificationReport | None = None) -> Splitter:
    """First factor pair ``(y, z)`` in index order meeting the splitter contract."""
    rep = report if report is not None else classify(m, p, primes=False)
    unit, hgt = rep.flags["unit"], rep.heights
    t = m.table
    h = p.holds
    non = np.array([u is False for u in unit])
    hg = np.array([-1 if v is None else v for v in hgt])

    def split(x: int):
        if hg[x] < 0:
            return None
        ys, zs = np.nonzero((t == x) & non[:, None] & non[None, :] & h[:, x][:, None] & h[:, x][None, :])
        ok = (hg[ys] >= 0) & (hg[zs] >= 0) & (hg[ys] + hg[zs] <= hg[x])
        if not ok.any():
            return None
        k = int(np.argmax(ok))
        return int(ys[k]), int(zs[k])

    return split


# --------------------------------------------------------------------------
# chain conditions and atomicity conditions


def chain_condition_report(m: Carrier) -> dict[str, ChainReport]:
    """ACCP, ACCPR and ACCPL as artinianity of two-sided, left and right divisibility."""
    return {
        "ACCP": artinian_report(divisibility(m)),
        "ACCPR": artinian_report(left_divisibility(m)),
        "ACCPL": artinian_report(right_divisibility(m)),
    }


def _as_check(r: ChainReport) -> Check:
    return Check(r.verdict, r.chain if r.verdict is Verdict.REFUTED else None, r.note, r.known)


@dataclass
class CohnReport:
    unit_cancellative: Check
    acyclic: Check
    chains: dict[str, ChainReport]
    cond_a: Verdict
    cond_b: Verdict
    conclusion: FactorabilityReport | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.conclusion is None or self.conclusion.ok


def cohn_conditions(m: Carrier) -> CohnReport:
    """(a) unit-cancellative with artinian left and right divisibility;
    (b) acyclic with artinian divisibility. Either one implies that every
    non-unit factors into atoms, which is then checked on the carrier."""
    uc = is_unit_cancellative(m)
    ac = is_acyclic(m)
    chains = chain_condition_report(m)
    a = conjunction(uc, _as_check(chains["ACCPR"]), _as_check(chains["ACCPL"]))
    b = conjunction(ac, _as_check(chains["ACCP"]))
    rep = CohnReport(uc, ac, chains, a, b)
    if ac.verdict is Verdict.REFUTED:
        rep.notes.append("not acyclic: condition (b) fails and the atomicity conclusion is not implied")
    if Verdict.VERIFIED in (a, b):
        rep.conclusion = _classical_atomic(m)
    else:
        rep.notes.append("neither condition established; conclusion not checked")
    return rep


def _classical_atomic(m: Carrier) -> FactorabilityReport:
    r = classify(m, divisibility(m), primes=False)
    gens = frozenset(r.members("classical_atom").members)
    nonunits = frozenset(i for i, v in enumerate(r.flags["classical_unit"]) if v is False)
    closure = semigroup_closure(m, gens)
    missing = sorted(nonunits - closure.members)
    if not r.exact:
        return FactorabilityReport(Verdict.UNKNOWN, missing[0] if missing else None, gens, nonunits,
                                   "window is not certified")
    if missing:
        return FactorabilityReport(Verdict.REFUTED, missing[0], gens, nonunits)
    return FactorabilityReport(Verdict.VERIFIED, None, gens, nonunits,
                               "" if m.exhaustive else "every non-unit inside the window")
