"""Unit and property tests for the exact sparse linear algebra layer."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from liebider.linalg import (
    KERNEL_IMPLEMENTATION,
    SparseMatrix,
    SubspaceBasis,
    nullspace,
    nullspace_rows,
    project,
    rank,
    reduce_rows,
    reduce_vector,
    rref,
    span_equal,
)
from liebider.rationals import Rat, rat


def R(x):
    return rat(x)


def test_kernel_implementation_reported():
    assert KERNEL_IMPLEMENTATION in ("python", "cython")


def test_reduce_rows_known_example():
    rows = [{0: R(2), 1: R(4)}, {0: R(1), 1: R(2), 2: R(1)}]
    red = reduce_rows(rows)
    assert red == [{0: R(1), 1: R(2)}, {2: R(1)}]


def test_reduce_rows_idempotent_on_example():
    rows = [{0: R(1), 2: R(3)}, {1: R(5)}, {0: R(2), 1: R(1), 2: R(6)}]
    once = reduce_rows([dict(r) for r in rows])
    twice = reduce_rows([dict(r) for r in once])
    assert once == twice


def test_rref_and_rank():
    m = SparseMatrix.from_dense([[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    assert rank(m) == 2


def test_nullspace_known_example():
    m = SparseMatrix.from_dense([[1, 1, 0], [0, 1, 1]])
    ns = nullspace(m)
    assert ns.dimension == 1
    (row,) = ns.rows
    vec = {c: row.get(c, R(0)) for c in range(3)}
    assert vec == {0: R(1), 1: R(-1), 2: R(1)}


def test_nullspace_vectors_annihilated():
    dense = [[1, 2, 0, 1], [0, 0, 1, -1], [2, 4, 1, 1]]
    m = SparseMatrix.from_dense(dense)
    ns = nullspace(m)
    assert ns.dimension == 2
    for row in ns.rows:
        for mr in dense:
            assert sum(R(mr[c]) * v for c, v in row.items()) == 0


def test_span_equal_scaling_and_shuffling():
    a = SubspaceBasis(("x", "y", "z"), reduce_rows([{0: R(1), 2: R(2)}, {1: R(1)}]))
    b = SubspaceBasis(
        ("x", "y", "z"),
        reduce_rows([{1: R(7)}, {0: R(-3), 2: R(-6)}]),
    )
    assert span_equal(a, b)
    c = SubspaceBasis(("x", "y", "z"), reduce_rows([{0: R(1)}, {1: R(1)}]))
    assert not span_equal(a, c)


def test_span_equal_label_mismatch_raises():
    a = SubspaceBasis(("x", "y"), [])
    b = SubspaceBasis(("x", "z"), [])
    with pytest.raises(ValueError):
        span_equal(a, b)


def test_reduce_vector_membership():
    basis = reduce_rows([{0: R(1), 1: R(1)}, {2: R(1)}])
    assert not reduce_vector({0: R(2), 1: R(2), 2: R(-5)}, basis)
    assert reduce_vector({0: R(1)}, basis)


def test_project():
    u = SubspaceBasis(("a", "b", "c"), reduce_rows([{0: R(1), 1: R(1)}, {2: R(1)}]))
    p = project(u, ("a", "c"))
    assert p.col_labels == ("a", "c")
    assert p.dimension == 2
    with pytest.raises(ValueError):
        project(u, ("a", "nope"))


def test_no_float_leakage():
    red = reduce_rows([{0: R(3), 1: R(1)}, {0: R(1), 1: R(7)}])
    for row in red:
        for v in row.values():
            assert not isinstance(v, float)


_entry = st.fractions(
    min_value=Fraction(-9), max_value=Fraction(9), max_denominator=5
)


@st.composite
def sparse_rows(draw, max_rows=5, max_cols=5):
    n_cols = draw(st.integers(1, max_cols))
    n_rows = draw(st.integers(1, max_rows))
    rows = []
    for _ in range(n_rows):
        row = {}
        for c in range(n_cols):
            val = draw(_entry)
            if val:
                row[c] = rat(str(val))
        rows.append(row)
    return rows, n_cols


@settings(max_examples=60, deadline=None)
@given(sparse_rows())
def test_rref_idempotent(data):
    rows, _ = data
    once = reduce_rows([dict(r) for r in rows])
    twice = reduce_rows([dict(r) for r in once])
    assert once == twice


@settings(max_examples=60, deadline=None)
@given(sparse_rows())
def test_rank_nullity(data):
    rows, n_cols = data
    r = len(reduce_rows([dict(x) for x in rows]))
    k = len(nullspace_rows([dict(x) for x in rows], n_cols))
    assert r + k == n_cols


@settings(max_examples=60, deadline=None)
@given(sparse_rows())
def test_nullspace_exact(data):
    rows, n_cols = data
    for vec in nullspace_rows([dict(x) for x in rows], n_cols):
        for row in rows:
            assert sum(row.get(c, rat(0)) * v for c, v in vec.items()) == 0


@settings(max_examples=40, deadline=None)
@given(sparse_rows(), st.integers(1, 7))
def test_span_invariant_under_scaling(data, scale):
    rows, n_cols = data
    labels = tuple(f"c{i}" for i in range(n_cols))
    a = SubspaceBasis(labels, reduce_rows([dict(r) for r in rows]))
    scaled = [{c: v * scale for c, v in r.items()} for r in rows]
    b = SubspaceBasis(labels, reduce_rows(scaled))
    assert span_equal(a, b)


def test_pure_kernel_agrees_with_selected():
    from liebider import _kernel_py

    rows = [
        {0: R(2), 1: R(1), 3: R("1/3")},
        {0: R(1), 2: R(4)},
        {1: R(1), 2: R(-8), 3: R("2/3")},
        {0: R(3), 1: R(2), 2: R(-4), 3: R(1)},
    ]
    assert reduce_rows([dict(r) for r in rows]) == _kernel_py.reduce_rows(
        [dict(r) for r in rows]
    )
