from fractions import Fraction as F

import numpy as np
import pytest

from beltlab.linalg import bareiss_det, identity, inverse, matmul, matvec, solve_exact


def test_det_small_known():
    assert bareiss_det([[2, 1], [1, 1]]) == 1
    assert bareiss_det([[1, 2, 3], [4, 5, 6], [7, 8, 9]]) == 0
    assert bareiss_det([]) == 1


def test_det_rational_entries():
    assert bareiss_det([[F(1, 2), F(1, 3)], [F(1, 4), F(1, 5)]]) == F(1, 10) - F(1, 12)


def test_det_needs_pivoting():
    assert bareiss_det([[0, 1], [1, 0]]) == -1
    assert bareiss_det([[0, 0, 1], [0, 1, 0], [1, 0, 0]]) == -1


def test_det_matches_numpy_on_integer_matrices():
    rng = np.random.default_rng(3)
    for _ in range(30):
        a = rng.integers(-5, 6, size=(5, 5))
        assert bareiss_det(a.tolist()) == round(np.linalg.det(a))


def test_hilbert_matrix_determinant():
    # det of the 4x4 Hilbert matrix is 1/6048000
    h = [[F(1, i + j + 1) for j in range(4)] for i in range(4)]
    assert bareiss_det(h) == F(1, 6048000)


def test_solve_exact_unique_and_inconsistent():
    assert solve_exact([[1, 1], [1, -1]], [3, 1]) == [2, 1]
    assert solve_exact([[1, 1], [1, 1]], [1, 2]) is None


def test_inverse_roundtrip():
    a = [[F(2), F(1), F(0)], [F(1), F(3), F(1)], [F(0), F(1), F(4)]]
    assert matmul(a, inverse(a)) == identity(3)
    assert matvec(identity(3), [1, 2, 3]) == [1, 2, 3]


def test_inverse_singular():
    with pytest.raises((ZeroDivisionError, ValueError)):
        inverse([[1, 2], [2, 4]])
