import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from premonoid import catalog
from premonoid.checks import Verdict
from premonoid.permutations import fixedpoint_premonoid
from premonoid.preorder import (
    PreorderError,
    artinian_report,
    close,
    divisibility,
    dual,
    equality,
    from_matrix,
    heights,
    is_linearly_preordered,
    is_preordered_monoid,
    left_divisibility,
    longest_strict_chain,
    minimal_elements,
    noetherian_report,
    parse_preorder_file,
    pullback,
    right_divisibility,
    standard_order,
    total,
    transitive_closure,
)

from . import oracles
from .strategies import premonoids, relations, small_monoids


def test_close_empty_is_equality():
    p = close([], ["a", "b"])
    assert p == equality(["a", "b"])
    assert p.meta["was_closed"] is False  # reflexive pairs were added


def test_close_adds_transitive_pair():
    p = close([("a", "b"), ("b", "c")], ["a", "b", "c"])
    assert p.leq(0, 2) and not p.leq(2, 0)
    assert "added" in p.note


def test_close_symmetric_pair_gives_equivalence():
    p = close([("a", "b"), ("b", "a")], ["a", "b"])
    assert p.equivalence()[0, 1] and not p.strict().any()


def test_close_unknown_element():
    with pytest.raises(PreorderError):
        close([("a", "z")], ["a", "b"])


def test_strict_mode_rejects_open_input():
    with pytest.raises(PreorderError):
        from_matrix(["a", "b"], [[True, True], [False, False]], strict=True)


def test_preorder_file():
    p = parse_preorder_file("# comment\npair a b\n\npair b c\n", ["a", "b", "c"])
    assert p.leq(0, 2)
    with pytest.raises(PreorderError):
        parse_preorder_file("pear a b\n", ["a", "b"])


def test_group_divisibility_is_total():
    p = divisibility(catalog.zmod(3))
    assert p.holds.all()
    assert is_preordered_monoid(catalog.zmod(3), p).verdict is Verdict.VERIFIED


def test_numerical_divisibility_brute():
    w = catalog.NumericalMonoid([2, 3]).window(50)
    p = divisibility(w)
    i = w.index
    assert p.leq(i("2"), i("7")) and not p.leq(i("2"), i("3"))
    t = oracles.tab(w)
    assert oracles.divides(t, i("2"), i("7")) and not oracles.divides(t, i("2"), i("3"))


def test_free_monoid_divides_and_not_preordered():
    w = catalog.FreeMonoid("ab").window(4)
    p = divisibility(w)
    assert p.leq(w.index("a"), w.index("ba"))
    c = is_preordered_monoid(w, p)
    assert c.verdict is Verdict.REFUTED
    x, y, u, v = c.witness
    assert p.leq(x, u) and p.leq(y, v)
    assert not p.leq(w.mul(x, y), w.mul(u, v))


def test_natural_order_on_window_passes_compatibility():
    w = catalog.NumericalMonoid([1]).window(12)
    p = standard_order([int(s) for s in w.labels], w.labels)
    c = is_preordered_monoid(w, p)
    assert c.verdict is not Verdict.REFUTED and c.extra.get("window_pass")


def test_dual_examples():
    p = standard_order([0, 1, 2])
    assert np.array_equal(dual(p).holds, standard_order([0, -1, -2]).holds)
    e = equality(["a", "b"])
    assert dual(e) == e


def test_pullback_examples():
    target = standard_order([0, 1, 2])
    assert pullback([1, 1, 1], target, ["x", "y", "z"]).holds.all()
    assert np.array_equal(pullback([0, 1, 2], target, ["0", "1", "2"]).holds, target.holds)
    with pytest.raises(PreorderError):
        pullback([0, 5], target, ["x", "y"])


def test_fixedpoint_preorder_is_dual_pullback():
    m, p = fixedpoint_premonoid(5)
    fix = [sum(1 for i, v in enumerate(f.images) if i == v) for f in m.permutations]
    for a in range(0, m.size, 7):
        for b in range(0, m.size, 5):
            assert p.leq(a, b) == (fix[b] <= fix[a])


def test_minimal_elements_examples():
    e = equality(["a", "b", "c"])
    assert minimal_elements(e, range(3)) == {0, 1, 2}
    le = standard_order([3, 5, 9])
    assert minimal_elements(le, range(3)) == {0}
    w = catalog.NumericalMonoid([2, 3]).window(50)
    nonunits = [w.index(str(k)) for k in range(2, 11)]
    got = {w.labels[i] for i in minimal_elements(divisibility(w), nonunits)}
    assert got == {"2", "3"}
    with pytest.raises(PreorderError):
        minimal_elements(e, [])


def test_heights_examples():
    w = catalog.NumericalMonoid([2, 3]).window(10)
    p = divisibility(w)
    h = heights(p, [w.identity])
    assert h[w.identity] == 0
    assert h[w.index("7")] == 3
    m, fp = fixedpoint_premonoid(5)
    ident = [0]
    hf = heights(fp, ident)
    three_cycle = m.labels.index("(0 1 2)")
    assert hf[three_cycle] == 2


def test_heights_on_uncertified_window_are_unknown():
    w = catalog.MultiplicativeNaturals().window(6)
    assert set(heights(divisibility(w), [w.identity])) == {None}


def test_artinian_reports():
    p = divisibility(catalog.saturation(3))
    r = artinian_report(p)
    assert r.verdict is Verdict.VERIFIED
    assert noetherian_report(p).verdict is Verdict.VERIFIED
    assert noetherian_report(p).chain == artinian_report(dual(p)).chain


def test_bicyclic_left_divisibility_window():
    w = catalog.BicyclicMonoid().window(6)
    r = artinian_report(left_divisibility(w))
    assert r.verdict is Verdict.UNKNOWN
    assert r.known is True
    p = left_divisibility(w)
    assert all(p.lt(b, a) for a, b in zip(r.chain, r.chain[1:]))


def test_graded_window_length_function_checked():
    w = catalog.NumericalMonoid([2, 3]).window(20)
    r = artinian_report(divisibility(w))
    assert r.verdict is Verdict.UNKNOWN and r.known is True and r.length_function_checked is True


def test_linear_preorder_on_naturals():
    w = catalog.NumericalMonoid([1]).window(6)
    p = standard_order([int(s) for s in w.labels], w.labels)
    assert is_linearly_preordered(w, p).verdict is not Verdict.REFUTED
    z = catalog.zmod(3)
    assert is_linearly_preordered(z, equality(z.labels)).verdict is Verdict.REFUTED


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 6).flatmap(relations))
def test_closure_is_least_preorder(raw):
    c = transitive_closure(raw)
    n = len(raw)
    assert c.diagonal().all() and (c | raw).sum() == c.sum()
    ci = c.astype(int)
    assert not ((ci @ ci > 0) & ~c).any()
    # least: every pair in c is reachable in raw plus identity
    reach = raw | np.eye(n, dtype=bool)
    for _ in range(n):
        reach = reach | ((reach.astype(int) @ reach.astype(int)) > 0)
    assert np.array_equal(reach, c)


@settings(max_examples=150, deadline=None)
@given(premonoids())
def test_strict_part_and_heights(mp):
    m, p = mp
    s = p.strict()
    assert not (s & s.T).any() and not s.diagonal().any()
    e = m.identity
    units = [x for x in range(m.size) if p.leq(x, e) and p.leq(e, x)]
    h = heights(p, units)
    for x in range(m.size):
        assert (h[x] == 0) == (x in units)
    for x in range(m.size):
        for y in range(m.size):
            if s[x, y] and x not in units and y not in units:
                assert h[x] < h[y]
    assert h == oracles.heights(p.holds.tolist(), [x in units for x in range(m.size)])
    assert minimal_elements(p, range(m.size))
    assert dual(dual(p)) == p


@settings(max_examples=150, deadline=None)
@given(small_monoids())
def test_divisibility_family(m):
    t = oracles.tab(m)
    L, R, D = left_divisibility(m), right_divisibility(m), divisibility(m)
    assert L.holds.tolist() == oracles.relation(t, oracles.left_divides)
    assert R.holds.tolist() == oracles.relation(t, oracles.right_divides)
    assert D.holds.tolist() == oracles.relation(t, oracles.divides)
    union = transitive_closure(L.holds | R.holds)
    assert np.array_equal(union, D.holds)


def test_total_relation():
    assert total(["a", "b"]).holds.all()
