"""Monoid presentations: parsing, letter valuations, bounded congruence search
with replayable rewrite chains, left/right graphs, and the bounded
experiments for the one-relator family ``b^n = a b^n a``.

Grammar (one record per line, ``#`` starts a comment)::

    presentation := letters-line rule-line*
    letters-line := "letters:" name+
    rule-line    := "rule:" word "=" word
    word         := "eps" | name+
"""

from __future__ import annotations

import os
import re
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product as cartesian

from premonoid.checks import Check, Verdict
from premonoid.monoid import EnumerableMonoid, is_acyclic

Word = tuple[int, ...]

DEFAULT_DEPTH = int(os.environ.get("PREMONOID_DEPTH", 10_000))


class PresentationError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None) -> None:
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Presentation:
    letters: tuple[str, ...]
    rules: tuple[tuple[Word, Word], ...] = ()

    def __post_init__(self) -> None:
        if len(set(self.letters)) != len(self.letters):
            raise PresentationError("letters must be distinct")
        k = len(self.letters)
        for lhs, rhs in self.rules:
            if any(not 0 <= c < k for c in lhs + rhs):
                raise PresentationError("rule uses a letter outside the alphabet")

    def word(self, text: str) -> Word:
        """Parse ``"a b a"``, ``"eps"``, or ``"aba"`` when every letter is one character."""
        toks = text.split()
        if toks == ["eps"] or not toks:
            return ()
        pos = {s: i for i, s in enumerate(self.letters)}
        if all(t in pos for t in toks):
            return tuple(pos[t] for t in toks)
        if len(toks) == 1 and all(len(s) == 1 for s in self.letters) and all(c in pos for c in toks[0]):
            return tuple(pos[c] for c in toks[0])
        bad = next(t for t in toks if t not in pos)
        raise PresentationError(f"unknown letter {bad!r}")

    def show(self, w: Word) -> str:
        if not w:
            return "eps"
        sep = "" if all(len(s) == 1 for s in self.letters) else " "
        return sep.join(self.letters[c] for c in w)

    def max_rule_length(self) -> int:
        return max((max(len(l), len(r)) for l, r in self.rules), default=0)


def parse(text: str) -> Presentation:
    letters: list[str] | None = None
    rules: list[tuple[Word, Word]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        head, sep, rest = line.partition(":")
        key = head.strip()
        col0 = len(head) + 2
        if not sep:
            raise PresentationError("expected 'letters:' or 'rule:'", lineno, 1)
        if key == "letters":
            if letters is not None:
                raise PresentationError("duplicate letters line", lineno, 1)
            letters = []
            for m in re.finditer(r"\S+", rest):
                col = len(head) + 2 + m.start()
                if m.group() == "eps":
                    raise PresentationError("'eps' is reserved for the empty word", lineno, col)
                if m.group() in letters:
                    raise PresentationError(f"letter {m.group()!r} repeated", lineno, col)
                letters.append(m.group())
        elif key == "rule":
            if letters is None:
                raise PresentationError("rule before letters line", lineno, 1)
            if rest.count("=") != 1:
                raise PresentationError("a rule needs exactly one '='", lineno, col0)
            pos = {s: i for i, s in enumerate(letters)}
            sides = []
            offset = col0
            for part in rest.split("="):
                toks = part.split()
                if not toks:
                    raise PresentationError("empty rule side (write 'eps')", lineno, offset)
                word = []
                for tok in toks:
                    if tok == "eps" and len(toks) == 1:
                        continue
                    if tok not in pos:
                        col = len(head) + 1 + rest.index(tok) + 1
                        raise PresentationError(f"unknown letter {tok!r}", lineno, col)
                    word.append(pos[tok])
                sides.append(tuple(word))
                offset += len(part) + 1
            rules.append((sides[0], sides[1]))
        else:
            raise PresentationError(f"unknown key {key!r}", lineno, 1)
    if letters is None:
        raise PresentationError("missing letters line")
    return Presentation(tuple(letters), tuple(rules))


def format_presentation(p: Presentation) -> str:
    lines = ["letters: " + " ".join(p.letters)]
    sp = lambda w: " ".join(p.letters[c] for c in w) if w else "eps"
    lines += [f"rule: {sp(l)} = {sp(r)}" for l, r in p.rules]
    return "\n".join(lines) + "\n"


def valuation(w: Word, z: int) -> int:
    """Number of occurrences of letter ``z`` in ``w``."""
    return sum(1 for c in w if c == z)


def conserved_letters(p: Presentation) -> frozenset[int]:
    """Letters occurring equally often on both sides of every rule."""
    return frozenset(z for z in range(len(p.letters))
                     if all(valuation(l, z) == valuation(r, z) for l, r in p.rules))


def is_reduced_certified(p: Presentation) -> bool:
    """No rule side is empty, so a non-empty word is never congruent to the empty word."""
    return all(l and r for l, r in p.rules)


# --------------------------------------------------------------------------
# rewriting


@dataclass(frozen=True)
class Step:
    rule: int
    direction: int  # +1 replaces the left side by the right side, -1 the converse
    pos: int


def apply_step(p: Presentation, w: Word, s: Step) -> Word:
    lhs, rhs = p.rules[s.rule]
    src, dst = (lhs, rhs) if s.direction > 0 else (rhs, lhs)
    if w[s.pos:s.pos + len(src)] != src:
        raise ValueError(f"rule {s.rule} does not apply at position {s.pos}")
    return w[:s.pos] + dst + w[s.pos + len(src):]


def neighbours(p: Presentation, w: Word):
    """Every single-rule rewrite of ``w`` (both directions)."""
    for i, (lhs, rhs) in enumerate(p.rules):
        for d, src, dst in ((1, lhs, rhs), (-1, rhs, lhs)):
            if src == dst:
                continue
            L = len(src)
            for pos in range(len(w) - L + 1):
                if w[pos:pos + L] == src:
                    yield Step(i, d, pos), w[:pos] + dst + w[pos + L:]


@dataclass(frozen=True)
class CongruenceWitness:
    chain: tuple[Word, ...]
    steps: tuple[Step, ...]

    def replay(self, p: Presentation) -> bool:
        if len(self.chain) != len(self.steps) + 1:
            return False
        try:
            for w, s, nxt in zip(self.chain, self.steps, self.chain[1:]):
                if apply_step(p, w, s) != nxt:
                    return False
        except ValueError:
            return False
        return True

    def then(self, other: "CongruenceWitness") -> "CongruenceWitness":
        if self.chain[-1] != other.chain[0]:
            raise ValueError("chains do not meet")
        return CongruenceWitness(self.chain + other.chain[1:], self.steps + other.steps)

    def reversed(self) -> "CongruenceWitness":
        steps = [Step(s.rule, -s.direction, s.pos) for s in self.steps]
        return CongruenceWitness(self.chain[::-1], tuple(steps[::-1]))

    def to_dict(self, p: Presentation) -> dict:
        return {
            "kind": "congruence",
            "chain": [p.show(w) for w in self.chain],
            "steps": [{"rule": s.rule, "direction": s.direction, "pos": s.pos} for s in self.steps],
        }


@dataclass(frozen=True)
class CongruenceResult:
    verdict: Verdict
    witness: CongruenceWitness | None = None
    certificate: str = ""
    note: str = ""
    explored: int = 0


def _default_length_cap(p: Presentation, *words: Word) -> int:
    return max((len(w) for w in words), default=0) + 2 * p.max_rule_length() * 4


def congruent(p: Presentation, u: Word, v: Word, depth: int = DEFAULT_DEPTH,
              length_cap: int | None = None) -> CongruenceResult:
    """Decide ``u == v`` modulo the congruence, within caps.

    Verified answers carry a rewrite chain. Refuted is issued when a conserved
    letter has different counts, or when one side's congruence class was
    enumerated completely without touching a cap. Otherwise Unknown.
    """
    if depth <= 0:
        raise ValueError("depth must be positive")
    if length_cap is None:
        length_cap = _default_length_cap(p, u, v)
    if length_cap <= 0:
        raise ValueError("length_cap must be positive")
    u, v = tuple(u), tuple(v)
    if u == v:
        return CongruenceResult(Verdict.VERIFIED, CongruenceWitness((u,), ()))
    for z in sorted(conserved_letters(p)):
        if valuation(u, z) != valuation(v, z):
            return CongruenceResult(
                Verdict.REFUTED, certificate="conserved-letter",
                note=f"letter {p.letters[z]} occurs {valuation(u, z)} vs {valuation(v, z)} times")
    parents = ({u: None}, {v: None})
    frontiers = (deque([u]), deque([v]))
    truncated = [False, False]
    explored = 2
    while frontiers[0] and frontiers[1]:
        side = 0 if len(frontiers[0]) <= len(frontiers[1]) else 1
        mine, other = parents[side], parents[1 - side]
        for _ in range(len(frontiers[side])):
            w = frontiers[side].popleft()
            for step, nxt in neighbours(p, w):
                if nxt in mine:
                    continue
                if len(nxt) > length_cap:
                    truncated[side] = True
                    continue
                if explored >= depth:
                    truncated[side] = True
                    break
                mine[nxt] = (w, step)
                explored += 1
                if nxt in other:
                    return CongruenceResult(Verdict.VERIFIED, _join(p, parents, nxt), explored=explored)
                frontiers[side].append(nxt)
        if explored >= depth and all(frontiers):
            break
    for side in (0, 1):
        if not frontiers[side] and not truncated[side]:
            return CongruenceResult(Verdict.REFUTED, certificate="finite-class",
                                    note="congruence class enumerated completely", explored=explored)
    return CongruenceResult(Verdict.UNKNOWN, note="witness not found within caps", explored=explored)


def _trace(parent: dict, w: Word) -> tuple[list[Word], list[Step]]:
    words, steps = [w], []
    while parent[w] is not None:
        prev, step = parent[w]
        words.append(prev)
        steps.append(step)
        w = prev
    return words[::-1], steps[::-1]  # from root to w


def _join(p: Presentation, parents, meet: Word) -> CongruenceWitness:
    w1, s1 = _trace(parents[0], meet)  # u ... meet
    w2, s2 = _trace(parents[1], meet)  # v ... meet
    back = CongruenceWitness(tuple(w2), tuple(s2)).reversed()  # meet ... v
    return CongruenceWitness(tuple(w1), tuple(s1)).then(back)


def congruence_class(p: Presentation, w: Word, depth: int = DEFAULT_DEPTH,
                     length_cap: int | None = None) -> tuple[frozenset[Word], bool]:
    """Words reachable from ``w``; the flag says whether the class is complete."""
    if length_cap is None:
        length_cap = _default_length_cap(p, w)
    seen = {tuple(w)}
    queue = deque(seen)
    complete = True
    while queue:
        x = queue.popleft()
        for _, y in neighbours(p, x):
            if y in seen:
                continue
            if len(y) > length_cap or len(seen) >= depth:
                complete = False
                continue
            seen.add(y)
            queue.append(y)
    return frozenset(seen), complete


# --------------------------------------------------------------------------
# left and right graphs


@dataclass(frozen=True)
class Multigraph:
    vertices: tuple[str, ...]
    edges: tuple[tuple[int, int], ...]
    skipped_rules: tuple[int, ...] = ()  # rules with an empty side contribute no edge

    def first_cycle_edge(self) -> int | None:
        """Index of the first edge closing a cycle (loops and parallel edges count)."""
        parent = list(range(len(self.vertices)))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for k, (y, z) in enumerate(self.edges):
            ry, rz = find(y), find(z)
            if ry == rz:
                return k
            parent[ry] = rz
        return None


def _graph(p: Presentation, end: int) -> Multigraph:
    edges, skipped = [], []
    for i, (l, r) in enumerate(p.rules):
        if not l or not r:
            skipped.append(i)
        else:
            edges.append((l[end], r[end]))
    return Multigraph(p.letters, tuple(edges), tuple(skipped))


def left_graph(p: Presentation) -> Multigraph:
    return _graph(p, 0)


def right_graph(p: Presentation) -> Multigraph:
    return _graph(p, -1)


def is_adian(p: Presentation) -> Check:
    """Both graphs of this (finite) presentation are cycle-free.

    Rules with an empty side have no edge; their presence leaves the verdict
    unknown. Refutations name the graph and the rule closing a cycle.
    """
    for name, g in (("left", left_graph(p)), ("right", right_graph(p))):
        k = g.first_cycle_edge()
        if k is not None:
            rule = [i for i in range(len(p.rules)) if i not in g.skipped_rules][k]
            return Check(Verdict.REFUTED, (name, rule), note=f"{name} graph has a cycle through rule {rule}")
    skipped = left_graph(p).skipped_rules
    if skipped:
        return Check(Verdict.UNKNOWN, note=f"rules {list(skipped)} have an empty side and no graph edge")
    return Check(Verdict.VERIFIED)


# --------------------------------------------------------------------------
# presented monoid as an enumerable backend


class PresentedMonoid(EnumerableMonoid):
    """Elements are canonical representatives: the shortest, then
    lexicographically least word found in the (capped) congruence class."""

    def __init__(self, p: Presentation, *, depth: int = 500, length_extra: int | None = None,
                 name: str = "") -> None:
        self.p = p
        self.depth = depth
        self.length_extra = p.max_rule_length() if length_extra is None else length_extra
        self.name = name or "presented"
        facts: dict[str, bool] = {}
        if is_reduced_certified(p):
            facts["dedekind_finite"] = True
        if is_adian(p).verdict is Verdict.VERIFIED:
            # cycle-free presentations define cancellative monoids
            facts.update(cancellative=True, unit_cancellative=True, dedekind_finite=True)
        self.facts = facts
        self._canon = lru_cache(maxsize=None)(self._canonical)

    @property
    def identity(self) -> Word:
        return ()

    def _canonical(self, w: Word) -> Word:
        cls, _ = congruence_class(self.p, w, self.depth, len(w) + self.length_extra)
        return min(cls, key=lambda x: (len(x), x))

    def canonical(self, w: Word) -> Word:
        return self._canon(tuple(w))

    def op(self, x: Word, y: Word) -> Word:
        return self.canonical(tuple(x) + tuple(y))

    def eq(self, x: Word, y: Word) -> bool:
        return congruent(self.p, x, y).verdict is Verdict.VERIFIED

    def enumerate(self, bound: int) -> list[Word]:
        k = len(self.p.letters)
        out = set()
        for n in range(bound + 1):
            for w in cartesian(range(k), repeat=n):
                c = self.canonical(w)
                if len(c) <= bound:
                    out.add(c)
        return sorted(out, key=lambda x: (len(x), x))

    def encode(self, w: Word) -> str:
        return self.p.show(w)

    def decode(self, s: str) -> Word:
        return self.canonical(self.p.word(s))

    def certified_nonunit(self, w: Word) -> bool:
        return bool(w) and is_reduced_certified(self.p)


# --------------------------------------------------------------------------
# the family b^n = a b^n a


def sandwich_presentation(n: int) -> Presentation:
    if n < 1:
        raise ValueError("n must be at least 1")
    return Presentation(("a", "b"), (((1,) * n, (0,) + (1,) * n + (0,)),))


def z_word(n: int, k: int) -> Word:
    """``b^n a^k b^n``."""
    return (1,) * n + (0,) * k + (1,) * n


@dataclass(frozen=True)
class SuiteItem:
    claim: str
    status: str  # verified | refuted | certified | not-found | proved-unverified
    witness: object = None
    note: str = ""


@dataclass
class SuiteReport:
    n: int
    k_max: int
    items: list[SuiteItem] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(i.status in ("verified", "refuted", "certified", "proved-unverified") for i in self.items)

    def by_status(self, status: str) -> list[SuiteItem]:
        return [i for i in self.items if i.status == status]


def _congruence_item(p, claim, u, v, depth) -> SuiteItem:
    r = congruent(p, u, v, depth=depth)
    if r.verdict is Verdict.VERIFIED:
        assert r.witness.replay(p)
        return SuiteItem(claim, "verified", r.witness)
    if r.verdict is Verdict.REFUTED:
        return SuiteItem(claim, "refuted", None, r.note)
    return SuiteItem(claim, "not-found", None, "witness not found within caps")


def sandwich_suite(n: int, k_max: int, depth: int = DEFAULT_DEPTH) -> SuiteReport:
    """Bounded checks for ``Mon<a, b | b^n = a b^n a>``.

    Positive congruences are searched with replayable witnesses; statements
    about infinite descending chains are listed as proved in theory only.
    """
    if n < 1 or k_max < 1:
        raise ValueError("need n >= 1 and k_max >= 1")
    p = sandwich_presentation(n)
    a, b = 0, 1
    bn = (b,) * n
    rep = SuiteReport(n, k_max)
    add = rep.items.append
    show = p.show

    cons = conserved_letters(p)
    add(SuiteItem("b is conserved and a is not", "certified" if cons == frozenset({b}) else "refuted",
                  sorted(p.letters[z] for z in cons)))
    adian = is_adian(p)
    add(SuiteItem("left and right graphs are cycle-free", "verified" if adian.verdict is Verdict.VERIFIED
                  else "refuted", adian.witness))
    add(SuiteItem("the only unit is the empty word", "certified" if is_reduced_certified(p) else "not-found",
                  note="no rule has an empty side"))
    if n == 1:
        add(_congruence_item(p, "b == a b a", (b,), (a, b, a), depth))
    for k in range(k_max):
        zk, zk1 = z_word(n, k), z_word(n, k + 1)
        add(_congruence_item(p, f"z_{k + 1} a == z_{k}", zk1 + (a,), zk, depth))
        add(_congruence_item(p, f"a z_{k + 1} == z_{k}", (a,) + zk1, zk, depth))
    for j in range(k_max + 1):
        add(_congruence_item(p, f"a^{j} {show(bn)} a^{j} == {show(bn)}", (a,) * j + bn + (a,) * j, bn, depth))
    for k in range(k_max + 1):
        r = congruent(p, (b,), (a,) * k, depth=depth)
        add(SuiteItem(f"b != a^{k}", "refuted" if r.verdict is Verdict.REFUTED else "not-found",
                      None, r.note))

    # acyclicity fails: a b^n a == b^n with a a non-unit
    r = congruent(p, (a,) + bn + (a,), bn, depth=depth)
    add(SuiteItem("not acyclic: a x a == x for x = b^n", "verified" if r.verdict is Verdict.VERIFIED
                  else "not-found", r.witness))
    window = PresentedMonoid(p, name=f"sandwich:{n}").window(n + 2)
    ac = is_acyclic(window)
    add(SuiteItem("acyclicity refuted on a window", "refuted" if ac.verdict is Verdict.REFUTED else "not-found",
                  tuple(window.labels[i] for i in ac.witness) if ac.witness else None))

    # class of a is {a}: no rule applies to a word without b
    cls_a, done_a = congruence_class(p, (a,), depth)
    add(SuiteItem("a is a divisibility atom", "certified" if done_a and cls_a == {(a,)} else "not-found",
                  note="class of a is {a}; a one-letter word has no split into two non-empty words"))
    if n == 1:
        r = congruent(p, (b,), (a, b, a), depth=depth)
        add(SuiteItem("b is not a divisibility atom: b == a (b a)", "verified" if r.verdict is Verdict.VERIFIED
                      else "not-found", r.witness, "a and b a are non-empty, hence non-units"))
        add(SuiteItem("a divides b", "verified" if r.verdict is Verdict.VERIFIED else "not-found", r.witness))
        add(SuiteItem("b does not divide a", "certified",
                      note="every u b v has one b and a has none; b is conserved"))
        add(SuiteItem("b is a divisibility irreducible", "certified",
                      note="if b == u v then exactly one of u, v contains the single b, and b divides it"))
    else:
        cls_b, done_b = congruence_class(p, (b,), depth)
        add(SuiteItem("b is a divisibility atom", "certified" if done_b and cls_b == {(b,)} else "not-found",
                      note="class of b is {b}: fewer than n b's, so no rule applies"))
    add(SuiteItem("z_0 > z_1 > ... is strictly decreasing for left, right and two-sided divisibility",
                  "proved-unverified", note="infinite statement; the non-strict steps are verified above"))
    add(SuiteItem("none of the three divisibility preorders is artinian", "proved-unverified",
                  note="machine-unverified"))
    return rep
