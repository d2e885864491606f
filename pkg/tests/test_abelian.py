import itertools
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from premonoid.abelian import (
    AbelianGroup,
    MatrixFormatError,
    block_diag,
    check_dimension_hypotheses,
    cokernel_decomposition,
    cyclic,
    decompose_cardinality,
    determinant,
    direct_sum,
    is_smith_form,
    matmul,
    parse_matrix,
    set_dimension_violation,
    smith_normal_form,
    uniform_dimension,
)

from . import oracles

matrices = st.integers(1, 4).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda n: st.lists(st.lists(st.integers(-12, 12), min_size=n, max_size=n), min_size=m, max_size=m)
    )
)


def check_snf(A):
    r = smith_normal_form(A)
    assert matmul(matmul(r.U, A), r.V) == r.D
    assert abs(determinant(r.U)) == 1 and abs(determinant(r.V)) == 1
    assert is_smith_form(r.D)
    assert [d for d in r.diagonal if d] == oracles.invariant_factors(A)
    return r


@pytest.mark.parametrize(
    "A, diag",
    [
        ([[2, 0], [0, 3]], [1, 6]),
        ([[2, 4, 4], [-6, 6, 12], [10, -4, -16]], [2, 6, 12]),
        ([[0, 0], [0, 0]], [0, 0]),
        ([[6]], [6]),
        ([[4, 6]], [2]),
    ],
)
def test_snf_examples(A, diag):
    assert check_snf(A).diagonal == diag


def test_snf_on_random_matrices():
    rng = np.random.default_rng(2024)
    for _ in range(100):
        m, n = rng.integers(1, 5, size=2)
        check_snf(rng.integers(-20, 21, size=(m, n)).tolist())


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_snf_property(A):
    check_snf(A)


def test_snf_rejects_ragged():
    with pytest.raises(MatrixFormatError):
        smith_normal_form([[1, 2], [3]])


def test_determinant_matches_cofactor_expansion():
    rng = np.random.default_rng(5)
    for _ in range(50):
        n = int(rng.integers(1, 5))
        A = rng.integers(-9, 10, size=(n, n)).tolist()
        assert determinant(A) == oracles.det(A)


def test_cokernel_examples():
    assert str(cokernel_decomposition([[2, 0], [0, 3]])) == "Z/2 + Z/3"
    assert str(cokernel_decomposition([[1, 0], [0, 1]])) == "0"
    assert cokernel_decomposition([[2], [0]]) == AbelianGroup(1, (2,))
    assert cokernel_decomposition([[4, 0], [0, 6]]) == AbelianGroup(0, (2, 3, 4))
    assert cokernel_decomposition([[], []]) == AbelianGroup(2)


def test_block_diag_takes_multiset_union():
    rng = np.random.default_rng(11)
    for _ in range(30):
        A = rng.integers(-8, 9, size=tuple(rng.integers(1, 4, size=2))).tolist()
        B = rng.integers(-8, 9, size=tuple(rng.integers(1, 4, size=2))).tolist()
        G, H, GH = (cokernel_decomposition(X) for X in (A, B, block_diag(A, B)))
        assert GH == direct_sum(G, H)
        assert Counter(GH.primary_factors) == Counter(G.primary_factors) + Counter(H.primary_factors)


def test_dimension_is_additive():
    rng = np.random.default_rng(3)
    for _ in range(50):
        G = cyclic(int(rng.integers(0, 60)))
        H = direct_sum(cyclic(int(rng.integers(0, 60))), cyclic(int(rng.integers(1, 60))))
        assert uniform_dimension(direct_sum(G, H)) == uniform_dimension(G) + uniform_dimension(H)


def finite_groups(max_order):
    """Every finite abelian group of order <= max_order as a tuple of prime powers."""
    pps = [q for q in range(2, max_order + 1) if len(cyclic(q).primary_factors) == 1]
    out = {()}
    frontier = {()}
    while frontier:
        nxt = set()
        for g in frontier:
            order = int(np.prod(g)) if g else 1
            for q in pps:
                if order * q <= max_order and (not g or q >= g[-1]):
                    nxt.add(g + (q,))
        out |= nxt
        frontier = nxt
    return sorted(out)


@pytest.mark.parametrize("factors", finite_groups(36), ids=str)
def test_uniform_dimension_matches_brute_force(factors):
    G = AbelianGroup(0, factors)
    assert uniform_dimension(G) == (oracles.uniform_dimension_brute(list(factors)) if factors else 0)


@pytest.mark.parametrize("moduli, dim", [([4, 9], 2), ([2, 2], 2), ([2, 4, 3], 3), ([6, 6], 4), ([8], 1)])
def test_uniform_dimension_frozen_values(moduli, dim):
    assert oracles.uniform_dimension_brute(moduli) == dim
    G = AbelianGroup()
    for q in moduli:
        G = direct_sum(G, cyclic(q))
    assert uniform_dimension(G) == dim


def test_abelian_group_validation():
    with pytest.raises(ValueError):
        AbelianGroup(0, (6,))
    with pytest.raises(ValueError):
        AbelianGroup(-1)
    with pytest.raises(ValueError):
        cyclic(-3)
    assert cyclic(0) == AbelianGroup(1)
    assert cyclic(1).is_zero()
    assert str(AbelianGroup(2, (9, 3))) == "Z^2 + Z/3 + Z/9"
    assert AbelianGroup(0, (4, 3)).order() == 12 and AbelianGroup(1).order() is None


def test_dimension_hypotheses():
    groups = [AbelianGroup(), cyclic(0), cyclic(12), cyclic(8), direct_sum(cyclic(0), cyclic(6))]
    r = check_dimension_hypotheses(groups)
    assert r.ok and r.additive_pairs == 25 and not r.strict_pairs


@pytest.mark.parametrize("n, parts", [(1, []), (2, [2]), (12, [2, 2, 3]), (30, [2, 3, 5]), (64, [2] * 6)])
def test_decompose_cardinality(n, parts):
    assert decompose_cardinality(n) == parts


def test_decompose_cardinality_rejects_zero():
    with pytest.raises(ValueError):
        decompose_cardinality(0)


def test_set_dimension_is_superadditive():
    assert set_dimension_violation(20) is None
    for a, b in itertools.product(range(1, 15), repeat=2):
        assert (a - 1) + (b - 1) <= a * b - 1


def test_parse_matrix():
    assert parse_matrix("1 2  # first\n3 4\n") == [[1, 2], [3, 4]]
    assert parse_matrix(".\n.\n") == [[], []]
    with pytest.raises(MatrixFormatError):
        parse_matrix("1 2\n3\n")
    with pytest.raises(MatrixFormatError):
        parse_matrix("1 x\n")
