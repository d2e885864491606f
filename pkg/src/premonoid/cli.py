"""Command-line entry point.

Exit codes: 0 when every check passed (or nothing was refuted), 1 when a
check was refuted or a requested object does not exist, 2 on usage and
format errors. ``--json`` prints a single object carrying ``schema_version``.
Every witness in the JSON output can be fed back to ``premonoid replay``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace
from pathlib import Path

from premonoid import abelian, catalog, presentations
from premonoid.checks import Check, Verdict
from premonoid.classify import FLAGS, classify, verify_coincidences
from premonoid.factorize import (
    DEFAULT_MAX_COUNT,
    FactorizationError,
    brute_splitter,
    cohn_conditions,
    enumerate_factorizations,
    quark_factorization,
    verify_irreducible_factorability,
)
from premonoid.monoid import (
    OUTSIDE,
    Carrier,
    EnumerableMonoid,
    FiniteMonoid,
    MonoidFormatError,
    is_acyclic,
    is_dedekind_finite,
    is_unit_cancellative,
    nonunit_mask,
    parse_monoid,
)
from premonoid.permutations import (
    Permutation,
    compose_all,
    decompose,
    fixed_points,
    parse_cycles,
    transposition_splitter,
)
from premonoid.power import (
    DEFAULT_CAP,
    PowerSizeError,
    build,
    check_atomicity_criterion,
    check_idempotent_free,
    verify_power_factorability,
)
from premonoid.preorder import (
    PreorderError,
    divisibility,
    dual,
    left_divisibility,
    parse_preorder_file,
    right_divisibility,
    standard_order,
)

SCHEMA_VERSION = 1
DEFAULT_WINDOW = int(os.environ.get("PREMONOID_WINDOW", 12))
POWER_CAP = int(os.environ.get("PREMONOID_POWER_CAP", DEFAULT_CAP))

# numeric check names kept for compatibility with existing scripts
THEOREM_ALIASES = {"3.11": "irreducible-factorability", "4.5": "atomicity-conditions",
                   "4.6": "atomicity-conditions"}
POWER_ALIASES = {"4.10": "idempotent-free", "4.11": "factorability", "4.12": "atomicity"}
CLASS_TAGS = {"irreducibles": "irreducible", "atoms": "atom", "quarks": "quark"}
SHORT = {"unit": "unit", "irreducible": "irr", "atom": "atom", "quark": "quark", "prime": "prime",
         "classical_unit": "c.unit", "classical_atom": "c.atom", "classical_irreducible": "c.irr"}


class UsageError(Exception):
    pass


# --------------------------------------------------------------------------
# loaders


def load_monoid(src: str, window: int = DEFAULT_WINDOW) -> Carrier:
    """A catalog name, ``file:<path>``, or a path to a monoid file."""
    if src.startswith("file:") or (":" not in src and Path(src).is_file()):
        path = src[5:] if src.startswith("file:") else src
        return parse_monoid(Path(path).read_text(encoding="utf-8"), name=src)
    m = catalog.get(src)
    if m is None:
        raise MonoidFormatError(f"{src!r} does not name a finite monoid here")
    if isinstance(m, EnumerableMonoid):
        return m.window(window)
    return m


def load_preorder(m: Carrier, kind: str, use_dual: bool = False):
    if kind == "div":
        p = divisibility(m)
    elif kind == "left":
        p = left_divisibility(m)
    elif kind == "right":
        p = right_divisibility(m)
    elif kind == "fixpoints":
        perms = getattr(m, "permutations", None)
        if perms is None:
            raise UsageError("the fixpoints preorder needs a symmetric group (sym:k)")
        counts = [len(fixed_points(f)) for f in perms]
        p = replace(dual(standard_order(counts, m.labels)), kind="fixpoints")
    elif kind.startswith("file:"):
        p = parse_preorder_file(Path(kind[5:]).read_text(encoding="utf-8"), m.labels)
    elif kind.startswith("pullback:"):
        p = _pullback_file(m, Path(kind[9:]).read_text(encoding="utf-8"))
    else:
        raise UsageError(f"unknown preorder {kind!r}")
    return dual(p) if use_dual else p


def _pullback_file(m: Carrier, text: str):
    """Lines ``<element> <integer>``; the preorder compares the integers."""
    values: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].split()
        if not line:
            continue
        if len(line) != 2:
            raise PreorderError(f"line {lineno}: expected '<element> <integer>'")
        m.index(line[0])
        try:
            values[line[0]] = int(line[1])
        except ValueError:
            raise PreorderError(f"line {lineno}: {line[1]!r} is not an integer") from None
    missing = [s for s in m.labels if s not in values]
    if missing:
        raise PreorderError(f"no value for {missing[0]!r}")
    return replace(standard_order([values[s] for s in m.labels], m.labels), kind="pullback")


def source_fields(args) -> dict:
    return {"monoid": args.monoid, "window": args.window}


# --------------------------------------------------------------------------
# rendering


def emit(args, payload: dict, text_lines: list[str]) -> None:
    if args.json:
        out = {"schema_version": SCHEMA_VERSION, "command": args.command, **payload}
        print(json.dumps(out, indent=2, sort_keys=True))
    else:
        print("\n".join(text_lines))


def mark(v) -> str:
    return {True: "+", False: "-", None: "?"}[v]


def check_witness(kind: str, args, m: Carrier, c: Check) -> dict | None:
    if c.verdict is not Verdict.REFUTED or c.witness is None:
        return None
    return {"kind": kind, **source_fields(args), "elements": [m.labels[i] for i in c.witness]}


def check_entry(name: str, c: Check, witness: dict | None = None, labels=None) -> dict:
    out = {"check": name, **c.to_dict(labels)}
    if witness:
        out["replay"] = witness
    return out


# --------------------------------------------------------------------------
# subcommands


def cmd_classify(args) -> int:
    m = load_monoid(args.monoid, args.window)
    p = load_preorder(m, args.preorder, args.dual)
    rep = classify(m, p)
    idx = range(m.size) if args.element is None else [m.index(args.element)]
    rows = [rep.element(i) for i in idx]
    lines = [f"preorder {p.kind} on {getattr(m, 'name', '') or args.monoid}"
             f" ({'exact' if rep.exact else 'window, three-valued'})",
             "element  " + " ".join(SHORT[f].ljust(6) for f in FLAGS) + " height",
             "(c.* columns use the divisibility preorder; + yes, - no, ? undetermined)"]
    for r in rows:
        lines.append(r["element"].ljust(8) + " " + " ".join(mark(r[f]).ljust(6) for f in FLAGS)
                     + " " + ("?" if r["height"] is None else str(r["height"])))
    emit(args, {"monoid": args.monoid, "preorder": p.kind, "exact": rep.exact, "elements": rows}, lines)
    return 0


def cmd_factor(args) -> int:
    m = load_monoid(args.monoid, args.window)
    p = load_preorder(m, args.preorder, args.dual)
    x = m.index(args.element)
    rep = classify(m, p, primes=False)
    flag = CLASS_TAGS[args.into]
    base = {"kind": "factorization", **source_fields(args), "preorder": args.preorder, "dual": args.dual}
    if rep.flags["unit"][x] is True:
        emit(args, {"element": args.element, "unit": True, "factorizations": []},
             [f"{args.element} is a unit for this preorder: nothing to factor"])
        return 0
    if args.into == "quarks" and not args.all:
        splitter = (transposition_splitter(m) if args.preorder == "fixpoints" and not args.dual
                    else brute_splitter(m, p, rep))
        try:
            found = [quark_factorization(m, p, x, splitter, rep)]
        except FactorizationError as exc:
            emit(args, {"element": args.element, "error": str(exc), "factorizations": []}, [f"no factorization: {exc}"])
            return 1
    else:
        gens = rep.members(flag).members
        found = enumerate_factorizations(m, x, gens, args.max_len, args.max_count, class_tag=args.into)
        if not args.all:
            found = found[:1]
    wits = [{**base, **w.to_dict(m.labels)} for w in found]
    lines = [" * ".join(w["factors"]) + f" = {args.element}" for w in wits]
    if not wits:
        lines = [f"{args.element} has no factorization into {args.into} within the caps"]
    if getattr(found, "truncated", False):
        lines.append("(truncated at max-count)")
    emit(args, {"element": args.element, "into": args.into, "factorizations": wits,
                "truncated": bool(getattr(found, "truncated", False))}, lines)
    return 0 if wits else 1


def cmd_check(args) -> int:
    name = THEOREM_ALIASES.get(args.theorem, args.theorem)
    m = load_monoid(args.monoid, args.window)
    if name == "irreducible-factorability":
        p = load_preorder(m, args.preorder, args.dual)
        r = verify_irreducible_factorability(m, p)
        entry = {"check": name, "verdict": r.verdict.value, "note": r.note,
                 "uncovered": m.labels[r.uncovered] if r.uncovered is not None else None}
        lines = [f"{name}: {r.verdict}" + (f" ({r.note})" if r.note else "")]
        if r.uncovered is not None:
            lines.append(f"  not a product of irreducibles: {m.labels[r.uncovered]}")
        emit(args, {"checks": [entry]}, lines)
        return 1 if r.verdict is Verdict.REFUTED else 0
    if name == "atomicity-conditions":
        r = cohn_conditions(m)
        checks = [
            check_entry("unit-cancellative", r.unit_cancellative,
                        check_witness("unit_cancellative", args, m, r.unit_cancellative), m.labels),
            check_entry("acyclic", r.acyclic, check_witness("acyclic", args, m, r.acyclic), m.labels),
        ]
        for key, c in r.chains.items():
            checks.append({"check": f"chain-condition {key}", "verdict": c.verdict.value,
                           "chain": [m.labels[i] for i in c.chain], "note": c.note, "known": c.known})
        checks.append({"check": "condition (a): unit-cancellative, left and right chains",
                       "verdict": r.cond_a.value})
        checks.append({"check": "condition (b): acyclic, divisibility chains", "verdict": r.cond_b.value})
        concl = r.conclusion
        if concl is not None:
            checks.append({"check": "every non-unit is a product of atoms", "verdict": concl.verdict.value,
                           "uncovered": m.labels[concl.uncovered] if concl.uncovered is not None else None})
        lines = [f"{c['check']}: {c['verdict']}" + (" (known by theory)" if c.get("known") else "") for c in checks] + [f"  note: {s}" for s in r.notes]
        emit(args, {"checks": checks, "notes": r.notes}, lines)
        return 0 if r.ok else 1
    if name == "coincidences":
        r = verify_coincidences(m)
        claims = r.to_dict(m.labels)
        lines = [f"{c.name} [{c.hypothesis}]: {c.status}" for c in r.claims]
        emit(args, claims, lines)
        return 0 if r.ok else 1
    if name == "dedekind-finite":
        c = is_dedekind_finite(m)
        emit(args, {"checks": [check_entry(name, c, check_witness("dedekind_finite", args, m, c), m.labels)]},
             [f"{name}: {c.verdict}" + (f" witness {[m.labels[i] for i in c.witness]}" if c.witness else "")])
        return 1 if c.verdict is Verdict.REFUTED else 0
    raise UsageError(f"unknown check {args.theorem!r}")


def cmd_power(args) -> int:
    name = POWER_ALIASES.get(args.check, args.check)
    base = load_monoid(args.monoid, args.window)
    if not isinstance(base, FiniteMonoid):
        raise UsageError("power monoids need a finite base")
    if name == "idempotent-free":
        r = check_idempotent_free(base)
        payload = {"check": name, "applicable": r.applicable,
                   "proper_idempotents": [base.labels[i] for i in sorted(r.proper_idempotents)],
                   "all_units": r.all_units, "ok": r.ok,
                   "non_unit": base.labels[r.non_unit] if r.non_unit is not None else None}
        lines = [f"{name}: " + ("not applicable (proper idempotents "
                                 + ", ".join(payload["proper_idempotents"]) + ")" if not r.applicable
                                 else f"every element a unit: {r.all_units}")]
        emit(args, payload, lines)
        return 0 if r.ok else 1
    pm = build(base, POWER_CAP)
    P = pm.monoid
    if P is None:
        raise UsageError("power checks need a base of order at most 8")
    if name == "factorability":
        r = verify_power_factorability(base, pm)
        lab = lambda w: [P.labels[i] for i in w] if w else None
        payload = {"check": name, "reduced": r.reduced, "dedekind_finite": r.dedekind_finite.verdict.value,
                   "artinian": r.artinian, "size_monotone_violation": lab(r.size_monotone),
                   "divisor_not_contained": lab(r.divides_contained),
                   "factorable": r.factorable.value,
                   "irreducibles": sorted(P.labels[i] for i in r.irreducibles),
                   "quarks": sorted(P.labels[i] for i in r.quarks),
                   "irreducibles_equal_quarks": r.part_iii, "ok": r.ok}
        lines = [f"{k}: {v}" for k, v in payload.items() if k != "check"]
        emit(args, payload, [f"{name} on {P.name} ({P.size} elements)"] + lines)
        return 0 if r.ok else 1
    if name == "atomicity":
        r = check_atomicity_criterion(base, pm)
        payload = {"check": name, "a": r.cond_a, "b": r.cond_b, "c": r.cond_c, "equivalent": r.equivalent,
                   "witness_a": base.labels[r.witness_a] if r.witness_a is not None else None,
                   "witness_b": P.labels[r.witness_b] if r.witness_b is not None else None,
                   "witness_c": P.labels[r.witness_c] if r.witness_c is not None else None,
                   "atoms": sorted(P.labels[i] for i in r.atoms),
                   "quarks": sorted(P.labels[i] for i in r.quarks)}
        lines = [f"(a) no x != 1 with x^2 in {{1, x}}: {r.cond_a}",
                 f"(b) quarks = atoms in the power monoid: {r.cond_b}",
                 f"(c) the power monoid is atomic: {r.cond_c}",
                 f"equivalent: {r.equivalent}", "atoms: " + " ".join(payload["atoms"])]
        emit(args, payload, lines)
        return 0 if r.equivalent else 1
    raise UsageError(f"unknown power check {args.check!r}")


def cmd_present(args) -> int:
    payload: dict = {}
    lines: list[str] = []
    status = 0
    p = None
    if args.file:
        p = presentations.parse(Path(args.file).read_text(encoding="utf-8"))
        payload["presentation"] = presentations.format_presentation(p)
        payload["conserved_letters"] = sorted(p.letters[z] for z in presentations.conserved_letters(p))
        lines.append("conserved letters: " + (" ".join(payload["conserved_letters"]) or "none"))
    if args.adian:
        if p is None:
            raise UsageError("--adian needs --file")
        c = presentations.is_adian(p)
        payload["adian"] = c.to_dict()
        lines.append(f"cycle-free left and right graphs: {c.verdict}" + (f" ({c.note})" if c.note else ""))
        status |= c.verdict is Verdict.REFUTED
    if args.equal:
        if p is None:
            raise UsageError("--equal needs --file")
        u, v = (p.word(w) for w in args.equal)
        r = presentations.congruent(p, u, v, depth=args.depth, length_cap=args.length_cap)
        entry = {"verdict": r.verdict.value, "certificate": r.certificate, "note": r.note, "explored": r.explored}
        if r.witness is not None:
            entry["replay"] = {**r.witness.to_dict(p), "presentation": payload["presentation"]}
        payload["congruence"] = entry
        lines.append(f"{p.show(u)} == {p.show(v)}: {r.verdict}" + (f" ({r.note})" if r.note else ""))
        if r.witness is not None:
            lines.append("  " + " -> ".join(p.show(w) for w in r.witness.chain))
        status |= r.verdict is Verdict.REFUTED
    if args.sandwich:
        n, k = args.sandwich
        rep = presentations.sandwich_suite(n, k, args.depth)
        sp = presentations.sandwich_presentation(n)
        text = presentations.format_presentation(sp)
        items = []
        for it in rep.items:
            d = {"claim": it.claim, "status": it.status, "note": it.note}
            if isinstance(it.witness, presentations.CongruenceWitness):
                d["replay"] = {**it.witness.to_dict(sp), "presentation": text}
            elif it.witness is not None:
                d["witness"] = list(it.witness)
            items.append(d)
        payload["suite"] = {"n": n, "k_max": k, "ok": rep.ok, "items": items}
        lines.append(f"b^{n} = a b^{n} a, K = {k}:")
        lines += [f"  [{i['status']}] {i['claim']}" + (f"  ({i['note']})" if i["note"] else "") for i in items]
        status |= not rep.ok
    if not payload:
        raise UsageError("present needs --file or --sandwich")
    emit(args, payload, lines)
    return int(bool(status))


def cmd_perm(args) -> int:
    f = parse_cycles(args.cycles, args.k)
    payload: dict = {"k": args.k, "permutation": str(f), "fixed_points": sorted(fixed_points(f))}
    lines = [f"{f}  fixes {len(fixed_points(f))} of {args.k} points"]
    if args.decompose:
        ts = decompose(f)
        ok = compose_all(ts, args.k) == f
        payload["decomposition"] = {"kind": "transpositions", "k": args.k, "target": str(f),
                                    "factors": [str(t) for t in ts], "recomposes": ok}
        lines.append(" o ".join(map(str, ts)) or "id (empty product)")
        lines.append(f"{len(ts)} transpositions, bound k - 1 - |Fix| = {args.k - 1 - len(fixed_points(f))}")
        if not ok:
            return 1
    if args.classify:
        from premonoid.permutations import fixedpoint_premonoid

        m, p = fixedpoint_premonoid(args.k)
        x = m.permutations.index(f)
        rep = classify(m, p, primes=False)
        info = rep.element(x)
        payload["classification"] = info
        lines.append("fixed-point premonoid: " + ", ".join(
            f"{k}={mark(info[k])}" for k in ("unit", "irreducible", "atom", "quark")) + f", height={info['height']}")
        if info["unit"] is False:
            w = quark_factorization(m, p, x, transposition_splitter(m), rep)
            payload["quark_factorization"] = {"kind": "factorization", "monoid": f"sym:{args.k}",
                                              "window": None, "preorder": "fixpoints", "dual": False,
                                              **w.to_dict(m.labels)}
            lines.append("quark factorization: " + " * ".join(m.labels[i] for i in w.factors))
    emit(args, payload, lines)
    return 0


def cmd_decompose(args) -> int:
    if args.set_card is not None:
        primes = abelian.decompose_cardinality(args.set_card)
        emit(args, {"cardinality": args.set_card, "prime_factors": primes},
             [f"|X| = {args.set_card}: " + (" x ".join(map(str, primes)) or "terminal (empty product)")])
        return 0
    A = abelian.parse_matrix(Path(args.matrix).read_text(encoding="utf-8"))
    snf = abelian.smith_normal_form(A)
    G = abelian.cokernel_decomposition(A)
    payload = {"group": str(G), "rank": G.rank, "primary_factors": list(G.primary_factors),
               "uniform_dimension": abelian.uniform_dimension(G),
               "snf": {"kind": "snf", "matrix": A, "U": snf.U, "D": snf.D, "V": snf.V}}
    lines = [f"cokernel: {G}", f"uniform dimension: {payload['uniform_dimension']}",
             "invariant factors: " + " ".join(map(str, snf.diagonal))]
    emit(args, payload, lines)
    return 0


def cmd_catalog(args) -> int:
    if args.show:
        m = load_monoid(args.show, args.window)
        if isinstance(m, FiniteMonoid):
            text = m.to_text()
        else:
            text = "\n".join(m.labels)
        emit(args, {"entry": args.show, "labels": list(m.labels), "size": m.size}, [text.rstrip()])
        return 0
    entries = ["zmod:<n>", "klein", "idem2", "sat:<n>", "sym:<k> (k <= 6)", "numerical:<g1>,<g2>,...",
               "free:<letters>", "bicyclic", "mulnat", "power:<finite entry>", "presented:<path>",
               "sandwich:<n>"]
    emit(args, {"entries": entries}, entries)
    return 0


# --------------------------------------------------------------------------
# replay


def _collect(obj, out: list) -> None:
    if isinstance(obj, dict):
        if "kind" in obj and isinstance(obj["kind"], str):
            out.append(obj)
            return
        for v in obj.values():
            _collect(v, out)
    elif isinstance(obj, list):
        for v in obj:
            _collect(v, out)


def replay_witness(w: dict) -> tuple[bool, str]:
    kind = w["kind"]
    if kind == "congruence":
        p = presentations.parse(w["presentation"])
        chain = tuple(p.word(s) for s in w["chain"])
        steps = tuple(presentations.Step(s["rule"], s["direction"], s["pos"]) for s in w["steps"])
        ok = presentations.CongruenceWitness(chain, steps).replay(p)
        return ok, f"rewrite chain of {len(steps)} steps"
    if kind == "transpositions":
        k = w["k"]
        ts = [parse_cycles(s, k) for s in w["factors"]]
        ok = all(t.is_transposition() for t in ts) and compose_all(ts, k) == parse_cycles(w["target"], k)
        return ok, f"{len(ts)} transpositions"
    if kind == "snf":
        A, U, D, V = w["matrix"], w["U"], w["D"], w["V"]
        ok = (abelian.matmul(abelian.matmul(U, A), V) == D and abelian.is_smith_form(D)
              and abs(abelian.determinant(U)) == 1 and abs(abelian.determinant(V)) == 1)
        return ok, "U A V = D"
    m = load_monoid(w["monoid"], w.get("window") or DEFAULT_WINDOW)
    if kind == "factorization":
        factors = [m.index(s) for s in w["factors"]]
        ok = m.product(factors) == m.index(w["target"]) and bool(factors)
        tag = CLASS_TAGS.get(w.get("class"))
        if ok and tag and w.get("preorder"):
            rep = classify(m, load_preorder(m, w["preorder"], w.get("dual", False)), primes=False)
            ok = all(rep.flags[tag][f] is True for f in factors)
        return ok, f"{len(factors)} factors"
    els = [m.index(s) for s in w["elements"]]
    non = nonunit_mask(m)
    if kind == "dedekind_finite":
        x, y = els
        e = m.identity
        return m.mul(x, y) == e and m.mul(y, x) != e, "x*y = 1 != y*x"
    if kind == "unit_cancellative":
        x, y = els
        return bool(non[y]) and (m.mul(x, y) == x or m.mul(y, x) == x), "x*y = x or y*x = x"
    if kind == "acyclic":
        u, x, v = els
        ux = m.mul(u, x)
        return ux != OUTSIDE and m.mul(ux, v) == x and bool(non[u] or non[v]), "u*x*v = x"
    raise UsageError(f"unknown witness kind {kind!r}")


def cmd_replay(args) -> int:
    text = sys.stdin.read() if args.file == "-" else Path(args.file).read_text(encoding="utf-8")
    found: list[dict] = []
    _collect(json.loads(text), found)
    if not found:
        raise UsageError("no witness objects found")
    results = []
    for w in found:
        ok, what = replay_witness(w)
        results.append({"kind": w["kind"], "ok": ok, "detail": what})
    lines = [f"{'ok  ' if r['ok'] else 'FAIL'} {r['kind']}: {r['detail']}" for r in results]
    emit(args, {"results": results}, lines)
    return 0 if all(r["ok"] for r in results) else 1


# --------------------------------------------------------------------------
# argument parsing


def positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="premonoid", description="Factorization checks for preordered monoids.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print one JSON object")
    common.add_argument("--window", type=positive, default=DEFAULT_WINDOW,
                        help="exploration bound for infinite monoids (env PREMONOID_WINDOW)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized steps")
    sub = ap.add_subparsers(dest="command", required=True)

    def monoid_args(sp, preorder=True):
        sp.add_argument("--monoid", required=True, help="catalog entry, file:<path> or a path")
        if preorder:
            sp.add_argument("--preorder", default="div",
                            help="div | left | right | fixpoints | file:<path> | pullback:<map-file>")
            sp.add_argument("--dual", action="store_true", help="use the dual preorder")

    sp = sub.add_parser("classify", parents=[common], help="element classes of a premonoid")
    monoid_args(sp)
    sp.add_argument("--element")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("factor", parents=[common], help="factorizations of one element")
    monoid_args(sp)
    sp.add_argument("--element", required=True)
    sp.add_argument("--into", choices=sorted(CLASS_TAGS), default="irreducibles")
    sp.add_argument("--all", action="store_true")
    sp.add_argument("--max-len", type=positive)
    sp.add_argument("--max-count", type=positive, default=DEFAULT_MAX_COUNT)
    sp.set_defaults(func=cmd_factor)

    sp = sub.add_parser("check", parents=[common], help="structural checks on a monoid")
    monoid_args(sp)
    sp.add_argument("--theorem", "--name", dest="theorem", required=True,
                    help="irreducible-factorability | atomicity-conditions | coincidences | dedekind-finite "
                         "(numeric aliases accepted, see README)")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("power", parents=[common], help="checks on the reduced power monoid")
    monoid_args(sp, preorder=False)
    sp.add_argument("--check", required=True,
                    help="idempotent-free | factorability | atomicity (numeric aliases accepted, see README)")
    sp.set_defaults(func=cmd_power)

    sp = sub.add_parser("present", parents=[common], help="monoid presentations")
    sp.add_argument("--file")
    sp.add_argument("--adian", action="store_true", help="check that both graphs are cycle-free")
    sp.add_argument("--equal", nargs=2, metavar="WORD")
    sp.add_argument("--depth", type=positive, default=presentations.DEFAULT_DEPTH)
    sp.add_argument("--length-cap", type=positive)
    sp.add_argument("--sandwich", "--suite-4.8", dest="sandwich", nargs=2, type=positive, metavar=("N", "K"),
                    help="bounded suite for <a, b | b^n = a b^n a>")
    sp.set_defaults(func=cmd_present)

    sp = sub.add_parser("perm", parents=[common], help="permutations and the fixed-point premonoid")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--cycles", required=True)
    sp.add_argument("--decompose", action="store_true")
    sp.add_argument("--classify", action="store_true")
    sp.set_defaults(func=cmd_perm)

    sp = sub.add_parser("decompose", parents=[common], help="abelian groups and finite sets")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--matrix")
    g.add_argument("--set-card", type=int)
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("replay", parents=[common], help="re-verify witnesses from a JSON report")
    sp.add_argument("file", help="JSON file, or - for stdin")
    sp.set_defaults(func=cmd_replay)

    sp = sub.add_parser("catalog", parents=[common], help="list or print catalog entries")
    sp.add_argument("--show")
    sp.set_defaults(func=cmd_catalog)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, MonoidFormatError, PreorderError, PowerSizeError, OSError,
            presentations.PresentationError, abelian.MatrixFormatError, ValueError, KeyError) as exc:
        print(f"premonoid: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
