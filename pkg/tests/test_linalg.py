from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

from zsmatch.errors import ShapeMismatch
from zsmatch.linalg import IntMatrix, det, mod1, smith_normal_form, solve_integer, solve_mod1

small = st.integers(-6, 6)


@st.composite
def matrices(draw, max_dim=5):
    m = draw(st.integers(1, max_dim))
    n = draw(st.integers(1, max_dim))
    return [[draw(small) for _ in range(n)] for _ in range(m)]


def test_dense_roundtrip_and_product():
    A = IntMatrix.from_dense([[1, 0, 2], [0, -3, 0]])
    assert A.shape == (2, 3)
    assert A.to_dense() == [[1, 0, 2], [0, -3, 0]]
    assert A.transpose().to_dense() == [[1, 0], [0, -3], [2, 0]]
    assert (A @ A.transpose()).to_dense() == [[5, 0], [0, 9]]
    assert np.array_equal(A.to_numpy(), np.array([[1, 0, 2], [0, -3, 0]]))


def test_triplets_reject_duplicates():
    with pytest.raises(ShapeMismatch):
        IntMatrix.from_triplets(2, 2, [(0, 0, 1), (0, 0, 2)])


def test_shape_mismatch_on_product():
    with pytest.raises(ShapeMismatch):
        IntMatrix.from_dense([[1, 2]]) @ IntMatrix.from_dense([[1, 2]])


def test_snf_known_cases():
    assert smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]).diagonal == [2, 6, 12]
    assert smith_normal_form([[0, 0], [0, 0]]).rank == 0
    assert smith_normal_form([[6, 4]]).diagonal == [2]


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_snf_transforms_and_chain(A):
    snf = smith_normal_form(A, inverses=True)
    U, D, V = snf
    M = IntMatrix.from_dense(A, len(A[0]))
    assert (U @ M @ V) == D
    assert abs(det(U)) == 1 and abs(det(V)) == 1
    assert snf.U_inv @ U == IntMatrix.identity(len(A))
    d = snf.diagonal
    assert all(x > 0 for x in d)
    assert all(d[i + 1] % d[i] == 0 for i in range(len(d) - 1))
    # independent oracle
    expected = [int(abs(x)) for x in invariant_factors(Matrix(A), domain=ZZ) if x != 0]
    assert d == expected


@settings(max_examples=100, deadline=None)
@given(matrices(4), st.lists(small, min_size=4, max_size=4))
def test_solve_integer(A, x):
    n = len(A[0])
    b = [sum(a * v for a, v in zip(row, x[:n])) for row in A]
    y = solve_integer(A, b)
    assert y is not None
    assert [sum(a * v for a, v in zip(row, y)) for row in A] == b


def test_solve_integer_infeasible():
    assert solve_integer([[2, 4]], [3]) is None
    assert solve_integer([[1], [1]], [1, 2]) is None


@settings(max_examples=100, deadline=None)
@given(matrices(4), st.lists(st.fractions(min_value=0, max_value=1, max_denominator=12),
                             min_size=4, max_size=4))
def test_solve_mod1(A, x):
    n = len(A[0])
    b = [mod1(sum(a * v for a, v in zip(row, x[:n]))) for row in A]
    y = solve_mod1(A, b)
    assert y is not None
    assert [mod1(sum(a * v for a, v in zip(row, y))) for row in A] == b


def test_solve_mod1_torsion_obstruction():
    # 2 y = 1/2 is solvable, y = 0 together with y = 1/2 is not
    assert solve_mod1([[2]], [Fraction(1, 2)]) == [Fraction(1, 4)]
    assert solve_mod1([[1], [1]], [0, Fraction(1, 2)]) is None


def test_det():
    assert det([[2, 1], [7, 4]]) == 1
    assert det([[0, 1], [1, 0]]) == -1
    assert det([[1, 2], [2, 4]]) == 0
