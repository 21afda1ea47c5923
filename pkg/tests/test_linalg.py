"""Exact linear algebra: worked examples plus randomized structure properties."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from yamaguti.linalg import (
    Matrix,
    Subspace,
    column_space_basis,
    kernel_basis,
    rank,
    rref,
    solve,
    solve_membership,
    vec_is_zero,
)


def M(rows):
    return Matrix([[Fraction(x) for x in row] for row in rows])


class TestRref:
    def test_proportional_rows(self):
        reduced, pivots, rk = rref(M([[2, 4], [1, 2]]))
        assert rk == 1
        assert pivots == (0,)
        assert reduced == M([[1, 2], [0, 0]])

    def test_identity_fixed(self):
        ident = Matrix.identity(3)
        reduced, pivots, rk = rref(ident)
        assert reduced == ident and rk == 3

    def test_zero(self):
        z = Matrix.zero(2, 5)
        reduced, pivots, rk = rref(z)
        assert reduced == z and rk == 0 and pivots == ()

    def test_fractions_appear_only_from_elimination(self):
        reduced, _, rk = rref(M([[2, 1], [0, 3]]))
        assert reduced == M([[1, 0], [0, 1]])
        assert rk == 2

    def test_degenerate_shapes(self):
        empty_rows = Matrix([], rows=0, cols=3)
        reduced, pivots, rk = rref(empty_rows)
        assert rk == 0 and reduced.cols == 3
        assert kernel_basis(empty_rows).dim == 3
        empty_cols = Matrix([[], []], rows=2, cols=0)
        assert rank(empty_cols) == 0
        assert kernel_basis(empty_cols).dim == 0


class TestKernel:
    def test_identity_has_no_kernel(self):
        assert kernel_basis(Matrix.identity(2)).basis == ()

    def test_zero_map_kernel_is_everything(self):
        ker = kernel_basis(Matrix.zero(2, 3))
        assert ker.dim == 3

    def test_single_equation(self):
        ker = kernel_basis(M([[1, 1]]))
        assert ker.dim == 1
        (v,) = ker.basis
        assert v[0] + v[1] == 0 and not vec_is_zero(v)


class TestSolveMembership:
    def test_in_span(self):
        span = Subspace(2, ((Fraction(1), Fraction(0)),))
        assert solve_membership(span, (Fraction(3), Fraction(0))) == (Fraction(3),)

    def test_outside_span(self):
        span = Subspace(2, ((Fraction(1), Fraction(0)),))
        assert solve_membership(span, (Fraction(0), Fraction(1))) is None

    def test_zero_vector_in_zero_space(self):
        span = Subspace(2, ())
        assert solve_membership(span, (Fraction(0), Fraction(0))) == ()
        assert solve_membership(span, (Fraction(1), Fraction(0))) is None

    def test_dimension_mismatch(self):
        span = Subspace(2, ())
        with pytest.raises(ValueError):
            solve_membership(span, (Fraction(1),))


small_matrices = st.integers(min_value=1, max_value=4).flatmap(
    lambda r: st.integers(min_value=1, max_value=4).flatmap(
        lambda c: st.lists(
            st.lists(
                st.fractions(
                    min_value=-3, max_value=3, max_denominator=3
                ),
                min_size=c,
                max_size=c,
            ),
            min_size=r,
            max_size=r,
        )
    )
)


@settings(max_examples=60, deadline=None)
@given(small_matrices)
def test_rref_idempotent(rows):
    m = Matrix(rows)
    reduced, _, _ = rref(m)
    again, _, _ = rref(reduced)
    assert again == reduced


@settings(max_examples=60, deadline=None)
@given(small_matrices)
def test_rank_nullity(rows):
    m = Matrix(rows)
    assert rank(m) + kernel_basis(m).dim == m.cols


@settings(max_examples=60, deadline=None)
@given(small_matrices)
def test_kernel_vectors_annihilate(rows):
    m = Matrix(rows)
    for v in kernel_basis(m).basis:
        assert vec_is_zero(m.mat_vec(v))


@settings(max_examples=40, deadline=None)
@given(small_matrices)
def test_solve_agrees_with_column_space(rows):
    m = Matrix(rows)
    span = column_space_basis(m)
    rhs = m.mat_vec(tuple(Fraction(i + 1) for i in range(m.cols)))
    x = solve(m, rhs)
    assert x is not None
    assert m.mat_vec(x) == rhs
    assert solve_membership(span, rhs) is not None
