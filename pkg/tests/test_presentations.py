from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from premonoid import catalog
from premonoid.checks import Verdict
from premonoid.presentations import (
    CongruenceWitness,
    Presentation,
    PresentationError,
    PresentedMonoid,
    Step,
    apply_step,
    congruence_class,
    congruent,
    conserved_letters,
    format_presentation,
    is_adian,
    is_reduced_certified,
    left_graph,
    parse,
    right_graph,
    sandwich_presentation,
    sandwich_suite,
    valuation,
    z_word,
)

COMMUTE = parse("letters: a b\nrule: a b = b a\n")
SANDWICH1 = sandwich_presentation(1)

words2 = st.lists(st.integers(0, 1), max_size=6).map(tuple)


@pytest.mark.parametrize(
    "text, line, column",
    [
        ("rule: a = b\n", 1, 1),
        ("letters: a b\nrule: a b\n", 2, 6),
        ("letters: a b\nrule: a = c\n", 2, 11),
        ("letters: a a\n", 1, 12),
        ("letters: a\nletters: b\n", 2, 1),
        ("letters: a\nfoo: a\n", 2, 1),
        ("letters: a\nrule: a = \n", 2, 10),
        ("letters: a eps\n", 1, 12),
    ],
)
def test_parse_errors_have_positions(text, line, column):
    with pytest.raises(PresentationError) as exc:
        parse(text)
    assert (exc.value.line, exc.value.column) == (line, column)


def test_parse_missing_letters():
    with pytest.raises(PresentationError):
        parse("# nothing\n")


def test_parse_round_trip():
    text = "letters: a b\nrule: b = a b a\nrule: a a = eps\n"
    p = parse(text)
    assert format_presentation(p) == text
    assert parse(format_presentation(p)) == p
    assert p.rules == ((((1,), (0, 1, 0))), ((0, 0), ()))


def test_word_forms():
    assert SANDWICH1.word("a b a") == SANDWICH1.word("aba") == (0, 1, 0)
    assert SANDWICH1.word("eps") == ()
    with pytest.raises(PresentationError):
        SANDWICH1.word("c")


def test_conserved_letters():
    assert conserved_letters(Presentation(("a", "b"))) == {0, 1}
    assert conserved_letters(parse("letters: a b\nrule: a = a a\n")) == {1}
    assert conserved_letters(SANDWICH1) == {1}
    assert conserved_letters(sandwich_presentation(3)) == {1}


def test_reduced_certificate():
    assert is_reduced_certified(SANDWICH1)
    assert not is_reduced_certified(parse("letters: a\nrule: a a = eps\n"))


def test_graph_with_loop():
    p = parse("letters: a b\nrule: a b = a a\n")
    assert left_graph(p).first_cycle_edge() == 0
    r = is_adian(p)
    assert r.verdict is Verdict.REFUTED and r.witness == ("left", 0)


def test_graph_with_parallel_edges():
    p = parse("letters: a b\nrule: a = b\nrule: a a = b b\n")
    assert right_graph(p).first_cycle_edge() == 1
    assert is_adian(p).witness == ("left", 1)


@pytest.mark.parametrize("n", range(1, 5))
def test_sandwich_family_is_adian(n):
    assert is_adian(sandwich_presentation(n)).verdict is Verdict.VERIFIED


def test_empty_side_leaves_adian_unknown():
    r = is_adian(parse("letters: a b\nrule: a b = eps\n"))
    assert r.verdict is Verdict.UNKNOWN


def test_apply_step_checks_position():
    with pytest.raises(ValueError):
        apply_step(SANDWICH1, (0, 0), Step(0, 1, 0))


def test_sandwich_relation_has_a_witness():
    r = congruent(SANDWICH1, SANDWICH1.word("b"), SANDWICH1.word("aba"))
    assert r.verdict is Verdict.VERIFIED and r.witness.replay(SANDWICH1)
    assert len(r.witness.steps) == 1


def test_conserved_letter_refutation():
    r = congruent(SANDWICH1, SANDWICH1.word("b"), SANDWICH1.word("a"))
    assert r.verdict is Verdict.REFUTED and r.certificate == "conserved-letter"


def test_finite_class_refutation():
    p = parse("letters: a b c\nrule: a b = b a\n")
    r = congruent(p, p.word("ab"), p.word("cc"))
    assert r.verdict is Verdict.REFUTED
    r = congruent(parse("letters: a b\nrule: a b = b a b\n"), (0, 1), (0, 0, 1))
    assert r.verdict is Verdict.REFUTED


def test_unknown_within_caps():
    p = parse("letters: a b\nrule: a = a a\nrule: b = b b\n")
    assert conserved_letters(p) == frozenset()
    r = congruent(p, p.word("a"), p.word("b"), depth=50)
    assert r.verdict is Verdict.UNKNOWN and "caps" in r.note


@pytest.mark.parametrize("depth, cap", [(0, 5), (-1, 5), (5, 0)])
def test_bad_caps_raise(depth, cap):
    with pytest.raises(ValueError):
        congruent(SANDWICH1, (0,), (1,), depth=depth, length_cap=cap)


@settings(max_examples=200, deadline=None)
@given(words2, words2)
def test_commutation_congruence_matches_letter_counts(u, v):
    r = congruent(COMMUTE, u, v)
    same = Counter(u) == Counter(v)
    assert r.verdict is (Verdict.VERIFIED if same else Verdict.REFUTED)
    if same:
        w = r.witness
        assert w.replay(COMMUTE) and w.chain[0] == u and w.chain[-1] == v
        assert w.reversed().replay(COMMUTE)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 1), min_size=1, max_size=5).map(tuple))
def test_witnesses_compose_and_preserve_valuation(u):
    cls, complete = congruence_class(SANDWICH1, u, depth=40)
    assert all(valuation(w, 1) == valuation(u, 1) for w in cls)
    others = sorted(cls)[:3]
    for v in others:
        r1 = congruent(SANDWICH1, u, v, depth=2000)
        if r1.verdict is not Verdict.VERIFIED:
            continue
        r2 = congruent(SANDWICH1, v, u, depth=2000)
        assert r2.verdict is Verdict.VERIFIED
        both = r1.witness.then(r2.witness)
        assert both.replay(SANDWICH1) and both.chain[0] == both.chain[-1] == u


def test_then_requires_meeting_chains():
    a = CongruenceWitness(((0,),), ())
    b = CongruenceWitness(((1,),), ())
    with pytest.raises(ValueError):
        a.then(b)


def test_witness_dict():
    r = congruent(SANDWICH1, SANDWICH1.word("b"), SANDWICH1.word("aba"))
    d = r.witness.to_dict(SANDWICH1)
    assert d == {"kind": "congruence", "chain": ["b", "aba"], "steps": [{"rule": 0, "direction": 1, "pos": 0}]}


def test_presented_monoid_window():
    m = PresentedMonoid(SANDWICH1, name="s1")
    assert m.canonical(SANDWICH1.word("aba")) == SANDWICH1.word("b")
    assert m.eq(SANDWICH1.word("aabaa"), SANDWICH1.word("b"))
    w = m.window(4)
    assert "b" in w.labels and "aba" not in w.labels
    assert w.facts.get("cancellative") is True


def test_z_words():
    assert SANDWICH1.show(z_word(1, 2)) == "baab"
    assert sandwich_presentation(2).show(z_word(2, 1)) == "bbabb"
    with pytest.raises(ValueError):
        sandwich_presentation(0)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_sandwich_suite(n):
    rep = sandwich_suite(n, 3, depth=5000)
    assert rep.ok
    assert len(rep.by_status("proved-unverified")) == 2
    assert not rep.by_status("not-found")
    for item in rep.items:
        if isinstance(item.witness, CongruenceWitness):
            assert item.witness.replay(sandwich_presentation(n))


def test_catalog_uri():
    m = catalog.get("sandwich:2")
    assert isinstance(m, PresentedMonoid) and m.p == sandwich_presentation(2)
