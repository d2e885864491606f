"""Hypothesis strategies for small monoids and preorders."""

from __future__ import annotations

import numpy as np
from hypothesis import strategies as st

from premonoid.catalog import _all_tables
from premonoid.monoid import FiniteMonoid
from premonoid.preorder import from_matrix


@st.composite
def small_monoids(draw, max_order: int = 4):
    n = draw(st.integers(1, max_order))
    tables = _all_tables(n)
    k = draw(st.integers(0, len(tables) - 1))
    return FiniteMonoid([str(i) for i in range(n)], 0, tables[k], name=f"table:{n}#{k}")


@st.composite
def relations(draw, n: int):
    bits = draw(st.lists(st.booleans(), min_size=n * n, max_size=n * n))
    return np.array(bits, dtype=bool).reshape(n, n)


@st.composite
def premonoids(draw, max_order: int = 4):
    m = draw(small_monoids(max_order))
    raw = draw(relations(m.size))
    return m, from_matrix(m.labels, raw)
