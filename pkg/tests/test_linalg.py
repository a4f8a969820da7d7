from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from boundedcoh.linalg import (QMatrix, image_basis, kernel_basis, rank, rref,
                               solve, solve_in_span)

F = Fraction


def sympy_matrix(m):
    return sympy.Matrix([[sympy.Rational(x) for x in row]
                         for row in m.to_dense()])


def test_kernel_of_zero_map():
    m = QMatrix.zeros(1, 1)
    assert kernel_basis(m) == [[F(1)]]


def test_kernel_of_identity_is_empty():
    assert kernel_basis(QMatrix.identity(2)) == []


def test_image_of_zero_matrix_empty():
    assert image_basis(QMatrix.zeros(3, 2)) == []


def test_image_of_identity():
    vecs = image_basis(QMatrix.identity(3))
    assert len(vecs) == 3
    assert rank(QMatrix.from_rows(vecs)) == 3


def test_rank_two_product():
    # 4x6 rank-2 matrix built as a product of full-rank 4x2 and 2x6 factors
    a = QMatrix.from_rows([[1, 0], [2, 1], [3, 1], [0, 1]])
    b = QMatrix.from_rows([[1, 2, 0, 1, 1, 3], [0, 1, 1, 0, 2, 1]])
    m = a * b
    assert rank(m) == 2
    assert len(image_basis(m)) == 2
    assert len(kernel_basis(m)) == 4


def test_solve_simple():
    m = QMatrix.from_rows([[2, 0], [0, 3]])
    assert solve(m, [F(4), F(9)]) == [F(2), F(3)]


def test_solve_inconsistent():
    m = QMatrix.from_rows([[1, 1], [1, 1]])
    assert solve(m, [F(1), F(2)]) is None


def test_solve_underdetermined_sets_free_vars_to_zero():
    m = QMatrix.from_rows([[1, 1]])
    x = solve(m, [F(5)])
    assert x == [F(5), F(0)]
    assert m.matvec(x) == [F(5)]


def test_solve_in_span():
    vecs = [[F(1), F(0), F(1)], [F(0), F(1), F(1)]]
    coeffs = solve_in_span(vecs, [F(2), F(3), F(5)])
    assert coeffs == [F(2), F(3)]
    assert solve_in_span(vecs, [F(1), F(0), F(0)]) is None


def test_matmul_and_transpose():
    a = QMatrix.from_rows([[1, 2], [3, 4]])
    b = QMatrix.from_rows([[0, 1], [1, 0]])
    assert (a * b).to_dense() == [[F(2), F(1)], [F(4), F(3)]]
    assert a.transpose().to_dense() == [[F(1), F(3)], [F(2), F(4)]]


def test_hstack_submatrix():
    a = QMatrix.from_rows([[1, 2], [3, 4]])
    b = a.hstack(QMatrix.identity(2))
    assert b.to_dense()[0] == [F(1), F(2), F(1), F(0)]
    sub = b.submatrix([1], [0, 3])
    assert sub.to_dense() == [[F(3), F(1)]]


dense_matrices = st.integers(1, 5).flatmap(
    lambda n: st.integers(1, 5).flatmap(
        lambda m: st.lists(
            st.lists(st.integers(-6, 6), min_size=m, max_size=m),
            min_size=n, max_size=n)))


@settings(max_examples=60, deadline=None)
@given(dense_matrices)
def test_rank_nullity_and_sympy_agreement(rows):
    m = QMatrix.from_rows(rows)
    k = kernel_basis(m)
    im = image_basis(m)
    assert len(k) + len(im) == m.ncols
    sm = sympy_matrix(m)
    assert len(im) == sm.rank()
    for v in k:
        assert m.matvec(v) == [F(0)] * m.nrows
    # kernel vectors are independent
    if k:
        assert rank(QMatrix.from_rows(k)) == len(k)


@settings(max_examples=40, deadline=None)
@given(dense_matrices)
def test_rref_is_idempotent(rows):
    m = QMatrix.from_rows(rows)
    r1, p1 = rref(m)
    r2, p2 = rref(r1)
    assert r1 == r2 and p1 == p2
