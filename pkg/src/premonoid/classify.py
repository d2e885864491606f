"""Element classes of a premonoid (units, irreducibles, atoms, quarks, primes
relative to a preorder) and the classical classes, plus instance checks of
the implications between them for unit-cancellative and acyclic monoids.

Flags are three-valued: ``True``/``False`` are certified, ``None`` means the
window could not decide. On uncertified windows the values computed as if the
window were the whole monoid are kept separately in ``relative``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from premonoid.checks import Check, Verdict
from premonoid.monoid import (
    OUTSIDE,
    Carrier,
    ElementSet,
    is_acyclic,
    is_dedekind_finite,
    is_unit_cancellative,
    nonunit_mask,
)
from premonoid.preorder import (
    PreorderRel,
    divisibility,
    heights,
    left_divisibility,
    right_divisibility,
)

FLAGS = ("unit", "irreducible", "atom", "quark", "prime",
         "classical_unit", "classical_atom", "classical_irreducible")


@dataclass
class ClassificationReport:
    labels: tuple[str, ...]
    kind: str
    exact: bool
    flags: dict[str, list[bool | None]]
    relative: dict[str, list[bool]]
    witnesses: dict[str, dict[int, tuple]] = field(default_factory=dict)
    heights: list[int | None] = field(default_factory=list)

    def members(self, flag: str) -> ElementSet:
        vals = self.flags[flag]
        return ElementSet(
            frozenset(i for i, v in enumerate(vals) if v is True),
            uncertified=frozenset(i for i, v in enumerate(vals) if v is None),
        )

    def element(self, i: int) -> dict:
        out = {"element": self.labels[i]}
        for f in FLAGS:
            out[f] = self.flags[f][i]
        out["height"] = self.heights[i] if self.heights else None
        wit = {f: [self.labels[j] for j in w[i]] for f, w in self.witnesses.items() if i in w}
        if wit:
            out["witnesses"] = wit
        return out

    def to_dict(self) -> dict:
        return {
            "preorder": self.kind,
            "exact": self.exact,
            "elements": [self.element(i) for i in range(len(self.labels))],
        }


# Test suites register callbacks here to audit every classification.
_CLASSIFICATION_HOOKS: list[Callable[[ClassificationReport], None]] = []


def _factor_pairs(t: np.ndarray, left: np.ndarray, right: np.ndarray):
    """All ``(x, y, x*y)`` with ``left[x]``, ``right[y]`` and the product inside the carrier."""
    xs, ys = np.nonzero(left[:, None] & right[None, :])
    prod = t[xs, ys]
    keep = prod != OUTSIDE
    return xs[keep], ys[keep], prod[keep]


def _first_hits(targets: np.ndarray, *cols: np.ndarray) -> dict[int, tuple]:
    # row-major order of (x, y) makes the first hit the lexicographically smallest pair
    uniq, first = np.unique(targets, return_index=True)
    return {int(a): tuple(int(c[k]) for c in cols) for a, k in zip(uniq, first)}


def _classes(t: np.ndarray, holds: np.ndarray, nonunit: np.ndarray, primes: bool):
    """Window-relative classes for a relation and a non-unit mask (plain booleans)."""
    n = len(nonunit)
    strict = holds & ~holds.T
    xs, ys, prod = _factor_pairs(t, nonunit, nonunit)
    atom_w = _first_hits(prod, xs, ys)
    atom = nonunit.copy()
    atom[list(atom_w)] = False
    below = strict[xs, prod] & strict[ys, prod]
    irr_w = _first_hits(prod[below], xs[below], ys[below])
    irr = nonunit.copy()
    irr[list(irr_w)] = False
    sb = strict & nonunit[:, None]  # sb[b, a]: non-unit b strictly below a
    quark = nonunit & ~sb.any(axis=0)
    quark_w = {int(a): (int(np.argmax(sb[:, a])),) for a in np.flatnonzero(nonunit & ~quark)}
    prime = np.zeros(n, dtype=bool)
    prime_w: dict[int, tuple] = {}
    if primes:
        valid = t != OUTSIDE
        tt = np.where(valid, t, 0)
        cache: dict[bytes, tuple | None] = {}
        for a in np.flatnonzero(nonunit):
            row = holds[a]
            key = row.tobytes()
            if key not in cache:
                bad = np.argwhere(valid & row[tt] & ~row[:, None] & ~row[None, :])
                cache[key] = tuple(int(v) for v in bad[0]) if len(bad) else None
            if cache[key] is None:
                prime[a] = True
            else:
                prime_w[int(a)] = cache[key]
    return dict(atom=atom, irreducible=irr, quark=quark, prime=prime), dict(
        atom=atom_w, irreducible=irr_w, quark=quark_w, prime=prime_w)


def _preorder_nonunit_certs(m: Carrier, p: PreorderRel) -> np.ndarray:
    """Elements certified to be preorder non-units when the relation is not exact."""
    if p.kind in ("div", "left", "right") and is_dedekind_finite(m).holds:
        # one-sided divisibility units coincide with units in Dedekind-finite monoids
        return nonunit_mask(m)
    return np.zeros(m.size, dtype=bool)


def classify(m: Carrier, p: PreorderRel, *, primes: bool = True) -> ClassificationReport:
    if tuple(p.labels) != tuple(m.labels):
        raise ValueError("preorder and monoid are over different carriers")
    n = m.size
    e = m.identity
    t = m.table
    h = p.holds
    punit = h[:, e] & h[e, :]
    rel, wit = _classes(t, h, ~punit, primes)
    cunit_mask = ~nonunit_mask(m) if (m.exhaustive or m.certified) else ((t == e) & (t.T == e)).any(axis=1)
    div = divisibility(m) if p.kind != "div" else p
    crel, cwit = _classes(t, div.holds, ~cunit_mask, primes=False)
    relative = {
        "unit": punit, **rel,
        "classical_unit": cunit_mask,
        "classical_atom": crel["atom"],
        "classical_irreducible": crel["irreducible"],
    }
    witnesses = {k: v for k, v in wit.items()}
    witnesses["classical_atom"] = cwit["atom"]
    witnesses["classical_irreducible"] = cwit["irreducible"]

    exact = p.certified and (m.exhaustive or m.certified)
    flags: dict[str, list[bool | None]] = {}
    if exact:
        for k, v in relative.items():
            flags[k] = [bool(x) for x in v]
        if not p.whole:
            # a product outside the window could still violate primality
            flags["prime"] = [False if not v else None for v in relative["prime"]]
    else:
        flags = _sound_flags(m, p, relative, witnesses)
    hts = heights(p, np.flatnonzero(punit))
    report = ClassificationReport(m.labels, p.kind, exact, flags,
                                  {k: [bool(x) for x in v] for k, v in relative.items()},
                                  witnesses, hts)
    for hook in _CLASSIFICATION_HOOKS:
        hook(report)
    return report


def _sound_flags(m, p, relative, witnesses) -> dict[str, list[bool | None]]:
    """Keep only the window answers that survive enlarging the window."""
    n = m.size
    punit = relative["unit"]
    pnon = _preorder_nonunit_certs(m, p)
    cunit = relative["classical_unit"]
    cnon = nonunit_mask(m)
    unit = [True if punit[i] else (False if pnon[i] else None) for i in range(n)]
    flags = {"unit": unit, "classical_unit": [True if cunit[i] else (False if cnon[i] else None)
                                             for i in range(n)]}
    for k in ("irreducible", "quark", "prime"):
        flags[k] = [False if unit[i] is True else None for i in range(n)]
    atom = []
    for i in range(n):
        w = witnesses["atom"].get(i)
        if unit[i] is True or (w is not None and pnon[w[0]] and pnon[w[1]]):
            atom.append(False)
        else:
            atom.append(None)
    flags["atom"] = atom
    catom = []
    for i in range(n):
        w = witnesses["classical_atom"].get(i)
        if cunit[i] or (w is not None and cnon[w[0]] and cnon[w[1]]):
            catom.append(False)
        else:
            catom.append(None)
    flags["classical_atom"] = catom
    flags["classical_irreducible"] = [False if cunit[i] else None for i in range(n)]
    return flags


# --------------------------------------------------------------------------
# set-valued accessors


def preorder_units(m: Carrier, p: PreorderRel) -> ElementSet:
    return classify(m, p, primes=False).members("unit")


def irreducibles(m: Carrier, p: PreorderRel) -> ElementSet:
    return classify(m, p, primes=False).members("irreducible")


def atoms(m: Carrier, p: PreorderRel) -> ElementSet:
    return classify(m, p, primes=False).members("atom")


def quarks(m: Carrier, p: PreorderRel) -> ElementSet:
    return classify(m, p, primes=False).members("quark")


def primes(m: Carrier, p: PreorderRel) -> ElementSet:
    return classify(m, p).members("prime")


def classical_classes(m: Carrier) -> dict[str, ElementSet]:
    r = classify(m, divisibility(m), primes=False)
    return {
        "units": r.members("classical_unit"),
        "atoms": r.members("classical_atom"),
        "irreducibles": r.members("classical_irreducible"),
    }


# --------------------------------------------------------------------------
# implication diagrams


@dataclass(frozen=True)
class Claim:
    name: str
    hypothesis: str
    status: str  # pass | fail | unknown | not-applicable
    counterexample: int | None = None


@dataclass
class DiagramReport:
    hypotheses: dict[str, Check]
    claims: list[Claim]

    @property
    def ok(self) -> bool:
        return all(c.status != "fail" for c in self.claims)

    def failures(self) -> list[Claim]:
        return [c for c in self.claims if c.status == "fail"]

    def to_dict(self, labels=None) -> dict:
        return {
            "hypotheses": {k: v.to_dict(labels) for k, v in self.hypotheses.items()},
            "claims": [
                {"claim": c.name, "hypothesis": c.hypothesis, "status": c.status,
                 "counterexample": (labels[c.counterexample] if labels and c.counterexample is not None
                                    else c.counterexample)}
                for c in self.claims
            ],
        }


def _implies(a: list, b: list) -> tuple[str, int | None]:
    unknown = False
    for i, (x, y) in enumerate(zip(a, b)):
        if x is True and y is False:
            return "fail", i
        if x is None or (x is True and y is None):
            unknown = True
    return ("unknown" if unknown else "pass"), None


def _iff(a: list, b: list) -> tuple[str, int | None]:
    s1, w1 = _implies(a, b)
    if s1 == "fail":
        return s1, w1
    s2, w2 = _implies(b, a)
    if s2 == "fail":
        return s2, w2
    return ("unknown" if "unknown" in (s1, s2) else "pass"), None


def verify_coincidences(m: Carrier) -> DiagramReport:
    """Check the implications among one- and two-sided divisibility classes.

    Unit-cancellative: left/right quarks equal left/right atoms, which equal
    divisibility atoms and atoms; divisibility atoms are divisibility quarks
    and irreducibles. Acyclic: additionally divisibility irreducibles and
    quarks equal atoms. Dedekind-finite: the three kinds of divisibility
    units are the units and the atom notions agree. Claims whose hypothesis
    is not established are reported as not applicable.
    """
    L = classify(m, left_divisibility(m), primes=False).flags
    R = classify(m, right_divisibility(m), primes=False).flags
    D = classify(m, divisibility(m), primes=False).flags
    hyp = {
        "dedekind_finite": is_dedekind_finite(m),
        "unit_cancellative": is_unit_cancellative(m),
        "acyclic": is_acyclic(m),
    }
    atom = D["classical_atom"]
    rules: list[tuple[str, str, Callable, list, list]] = [
        ("left units = units", "dedekind_finite", _iff, L["unit"], D["classical_unit"]),
        ("right units = units", "dedekind_finite", _iff, R["unit"], D["classical_unit"]),
        ("div units = units", "dedekind_finite", _iff, D["unit"], D["classical_unit"]),
        ("left atom <=> atom", "dedekind_finite", _iff, L["atom"], atom),
        ("right atom <=> atom", "dedekind_finite", _iff, R["atom"], atom),
        ("div atom <=> atom", "dedekind_finite", _iff, D["atom"], atom),
        ("div irreducible <=> irreducible", "dedekind_finite", _iff, D["irreducible"], D["classical_irreducible"]),
        ("left quark <=> left atom", "unit_cancellative", _iff, L["quark"], L["atom"]),
        ("right quark <=> right atom", "unit_cancellative", _iff, R["quark"], R["atom"]),
        ("left atom => left irreducible", "unit_cancellative", _implies, L["atom"], L["irreducible"]),
        ("right atom => right irreducible", "unit_cancellative", _implies, R["atom"], R["irreducible"]),
        ("atom <=> div atom", "unit_cancellative", _iff, atom, D["atom"]),
        ("div atom <=> left atom", "unit_cancellative", _iff, D["atom"], L["atom"]),
        ("div atom <=> right atom", "unit_cancellative", _iff, D["atom"], R["atom"]),
        ("div atom => div quark", "unit_cancellative", _implies, D["atom"], D["quark"]),
        ("div atom => div irreducible", "unit_cancellative", _implies, D["atom"], D["irreducible"]),
        ("div quark => div irreducible", "unit_cancellative", _implies, D["quark"], D["irreducible"]),
        ("div atom <=> div quark", "acyclic", _iff, D["atom"], D["quark"]),
        ("div atom <=> div irreducible", "acyclic", _iff, D["atom"], D["irreducible"]),
    ]
    claims = []
    for name, h, rel, a, b in rules:
        if hyp[h].holds is not True:
            claims.append(Claim(name, h, "not-applicable"))
            continue
        status, wit = rel(a, b)
        claims.append(Claim(name, h, status, wit))
    return DiagramReport(hyp, claims)


def six_classes(m: Carrier) -> dict[str, list[bool | None]]:
    """The left quark/atom, div quark/atom, atom and div irreducible flags side by side."""
    L = classify(m, left_divisibility(m), primes=False).flags
    R = classify(m, right_divisibility(m), primes=False).flags
    D = classify(m, divisibility(m), primes=False).flags
    return {
        "left_quark": L["quark"], "left_atom": L["atom"],
        "right_quark": R["quark"], "right_atom": R["atom"],
        "div_quark": D["quark"], "div_atom": D["atom"],
        "atom": D["classical_atom"], "div_irreducible": D["irreducible"],
    }
