import numpy as np
import pytest
from hypothesis import given, settings

from premonoid import catalog
from premonoid.checks import Verdict
from premonoid.monoid import (
    FiniteMonoid,
    MonoidFormatError,
    is_acyclic,
    is_cancellative,
    is_dedekind_finite,
    is_unit_cancellative,
    parse_monoid,
    proper_idempotents,
    submonoid_closure,
    units,
    validate,
)

from . import oracles
from .strategies import small_monoids


def test_non_associative_table_fails_with_triple():
    # 0 is the identity; 1*1 = 1, 1*2 = 0, 2*1 = 2, 2*2 = 2
    t = [[0, 1, 2], [1, 1, 0], [2, 2, 2]]
    m = FiniteMonoid(["e", "a", "b"], 0, t)
    rep = validate(m)
    assert not rep.ok and rep.law == "associativity"
    x, y, z = rep.witness
    assert t[t[x][y]][z] != t[x][t[y][z]]
    assert oracles.associativity_violation(t) is not None


def test_identity_law_violation():
    rep = validate(FiniteMonoid(["e", "a"], 0, [[0, 1], [0, 1]]))
    assert not rep.ok and rep.law in ("left identity", "right identity")


def test_malformed_tables_raise():
    with pytest.raises(MonoidFormatError):
        FiniteMonoid(["e", "a"], 0, [[0, 1]])
    with pytest.raises(MonoidFormatError):
        FiniteMonoid(["e", "a"], 0, [[0, 1], [1, 2]])
    with pytest.raises(MonoidFormatError):
        FiniteMonoid(["e", "e"], 0, [[0, 1], [1, 0]])


def test_text_round_trip():
    m = catalog.saturation(3)
    again = parse_monoid(m.to_text())
    assert again.labels == m.labels and np.array_equal(again.table, m.table)


@pytest.mark.parametrize("text", [
    "elements: e a\nidentity: e\nrow e: e a\n",
    "elements: e a\nidentity: x\nrow e: e a\nrow a: a e\n",
    "elements: e a\nidentity: e\nrow e: e a\nrow a: a q\n",
    "identity: e\n",
])
def test_bad_monoid_files(text):
    with pytest.raises(MonoidFormatError):
        parse_monoid(text)


def test_saturation_units_and_idempotents():
    m = catalog.saturation(3)
    assert units(m).members == {0}
    assert proper_idempotents(m).members == {3}


def test_saturation_not_unit_cancellative():
    m = catalog.saturation(3)
    c = is_unit_cancellative(m)
    assert c.verdict is Verdict.REFUTED
    x, y = c.witness
    t = oracles.tab(m)
    assert y not in oracles.units(t, 0) and (t[x][y] == x or t[y][x] == x)
    # the pair given in the worked example is also a witness
    assert t[3][2] == 3


def test_numerical_closure_in_window():
    w = catalog.NumericalMonoid([2, 3]).window(10)
    gens = [w.index("2"), w.index("3")]
    got = {w.labels[i] for i in submonoid_closure(w, gens)}
    assert got == {"0", "2", "3", "4", "5", "6", "7", "8", "9", "10"}


def test_free_monoid_acyclic_not_refuted_and_known():
    w = catalog.FreeMonoid("ab").window(4)
    c = is_acyclic(w)
    assert c.verdict is not Verdict.REFUTED
    assert c.known is True


def test_bicyclic_not_dedekind_finite():
    w = catalog.BicyclicMonoid().window(6)
    c = is_dedekind_finite(w)
    assert c.verdict is Verdict.REFUTED
    x, y = c.witness
    assert w.mul(x, y) == w.identity and w.mul(y, x) != w.identity


def test_bicyclic_product_is_associative_on_window():
    assert validate(catalog.BicyclicMonoid().window(6)).ok


def test_bicyclic_encoding_round_trip():
    b = catalog.BicyclicMonoid()
    for p in b.enumerate(6):
        assert b.decode(b.encode(p)) == p


def test_catalog_entries_validate():
    for m in catalog.finite_catalog():
        assert validate(m).ok, m.name
    for uri in ("numerical:2,3", "free:ab", "bicyclic", "mulnat", "sandwich:1"):
        assert validate(catalog.get(uri).window(4)).ok, uri


def test_unknown_catalog_entry():
    with pytest.raises(MonoidFormatError):
        catalog.get("nope:1")


def test_group_is_cancellative():
    assert is_cancellative(catalog.zmod(5)).verdict is Verdict.VERIFIED
    assert is_cancellative(catalog.saturation(2)).verdict is Verdict.REFUTED


@settings(max_examples=150, deadline=None)
@given(small_monoids())
def test_finite_monoids_are_dedekind_finite(m):
    t = oracles.tab(m)
    e = m.identity
    for x in range(m.size):
        for y in range(m.size):
            if t[x][y] == e:
                assert t[y][x] == e
    assert is_dedekind_finite(m).verdict is Verdict.VERIFIED


@settings(max_examples=150, deadline=None)
@given(small_monoids())
def test_units_match_oracle(m):
    assert set(units(m).members) == oracles.units(oracles.tab(m), m.identity)
    assert validate(m).ok


@settings(max_examples=100, deadline=None)
@given(small_monoids())
def test_acyclic_implies_unit_cancellative(m):
    if is_acyclic(m).verdict is Verdict.VERIFIED:
        assert is_unit_cancellative(m).verdict is Verdict.VERIFIED


def test_random_monoids_are_valid():
    rng = np.random.default_rng(7)
    for n in (1, 2, 3, 4, 5):
        for _ in range(5):
            m = catalog.random_monoid(n, rng)
            assert m.size == n and validate(m).ok
