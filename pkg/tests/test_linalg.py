from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from trialab import linalg as la
from trialab.errors import DimensionError
from trialab.linalg import Matrix, Subspace

small = st.integers(min_value=-2, max_value=2)


def matrices(rows, cols):
    return st.lists(st.lists(small, min_size=cols, max_size=cols), min_size=rows, max_size=rows).map(
        lambda r: Matrix.from_rows(r))


def test_scalars_are_lowest_terms():
    assert la.to_scalar("2/4") == Fraction(1, 2)
    assert la.format_scalar(la.to_scalar("2/4")) == "1/2"
    assert la.format_scalar(la.to_scalar("-6/3")) == "-2"
    assert la.to_scalar("0/5").denominator == 1
    with pytest.raises(TypeError):
        la.to_scalar(True)
    with pytest.raises(TypeError):
        la.to_scalar(0.5)


def test_rref_examples():
    assert la.rref(Matrix.identity(2)) == Matrix.identity(2)
    assert la.rref(Matrix.from_rows([[2, 4], [1, 2]])) == Matrix.from_rows([[1, 2], [0, 0]])


@given(matrices(3, 3))
def test_rref_idempotent_and_rank_preserving(m):
    r = la.rref(m)
    assert la.rref(r) == r
    assert la.rank(r) == la.rank(m)


def test_kernel_examples():
    assert Subspace.full(2) == la.kernel(Matrix.zeros(2, 2))
    assert la.kernel(Matrix.identity(2)).dim == 0
    k = la.kernel(Matrix.from_rows([[1, 1]]))
    assert k == Subspace.span([(1, -1)], 2)
    assert la.contains(k, la.vec((1, -1)))


def test_image_examples():
    assert la.image(Matrix.identity(3)) == Subspace.full(3)
    assert la.image(Matrix.zeros(3, 2)).dim == 0


@given(matrices(4, 3))
def test_rank_nullity(m):
    assert la.kernel(m).dim + la.image(m).dim == m.cols


@given(matrices(4, 3))
def test_kernel_vectors_are_killed(m):
    for v in la.kernel(m).vectors:
        assert la.is_zero(m.apply(v))


def test_contains():
    s = Subspace.span([(1, 0)], 2)
    assert la.contains(s, la.vec((0, 0)))
    assert la.contains(Subspace.zero(2), la.vec((0, 0)))
    assert la.contains(s, la.vec((3, 0)))
    assert not la.contains(s, la.vec((0, 1)))
    with pytest.raises(DimensionError):
        la.contains(s, la.vec((1, 0, 0)))


def test_complement_examples():
    assert la.complement_basis(Subspace.span([(1, 0)], 2)) == Matrix.from_rows([[0, 1]])
    assert la.complement_basis(Subspace.zero(3)) == Matrix.identity(3)
    # pivot of (1,1) is column 0, so e2 is the complement
    assert la.complement_basis(Subspace.span([(1, 1)], 2)) == Matrix.from_rows([[0, 1]])


@given(st.lists(st.lists(small, min_size=4, max_size=4), max_size=4))
def test_complement_extends_to_a_basis(vectors):
    s = Subspace.span(vectors, 4)
    comp = la.complement_basis(s)
    square = Matrix.from_rows(list(s.vectors) + list(comp.entries))
    assert square.rows == 4 and la.rank(square) == 4


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=1, max_size=3))
def test_subspace_canonical_form(vectors):
    s = Subspace.span(vectors, 3)
    assert Subspace.span(list(reversed(vectors)), 3) == s
    pivots = s.pivots
    assert pivots == sorted(pivots) and len(set(pivots)) == len(pivots)
    for v in vectors:
        assert la.vec(v) in s


def test_matrix_columns_are_images():
    m = Matrix.from_columns([(1, 2), (3, 4)])
    assert m.apply(la.basis_vector(2, 0)) == la.vec((1, 2))
    assert (m @ Matrix.identity(2)) == m
    assert la.block_diagonal(Matrix.identity(1), Matrix.identity(2, 3)) == Matrix.diagonal([1, 3, 3])
