import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mteq import SingularMatrix, ZeroDiagonal, lower_tri_solve, lu_factor, lu_solve


class TestLuFactor:
    def test_known_2x2(self):
        F = lu_factor([[4.0, 3.0], [6.0, 3.0]])
        # pivot row is the second one
        np.testing.assert_array_equal(F.perm, [1, 0])
        np.testing.assert_allclose(F.lower, [[1.0, 0.0], [2.0 / 3.0, 1.0]])
        np.testing.assert_allclose(F.upper, [[6.0, 3.0], [0.0, 1.0]])

    def test_pivoting_handles_zero_leading_entry(self):
        A = np.array([[0.0, 1.0], [1.0, 0.0]])
        F = lu_factor(A)
        np.testing.assert_allclose(lu_solve(F, [2.0, 3.0]), [3.0, 2.0])

    def test_singular_raises(self):
        with pytest.raises(SingularMatrix):
            lu_factor([[1.0, 2.0], [2.0, 4.0]])

    def test_zero_matrix_raises(self):
        with pytest.raises(SingularMatrix):
            lu_factor(np.zeros((3, 3)))

    def test_non_square_rejected(self):
        with pytest.raises(ValueError):
            lu_factor(np.ones((2, 3)))

    def test_input_not_mutated(self):
        A = np.array([[0.0, 1.0], [1.0, 0.0]])
        lu_factor(A)
        np.testing.assert_array_equal(A, [[0.0, 1.0], [1.0, 0.0]])

    @settings(max_examples=50, deadline=None)
    @given(n=st.integers(1, 8), seed=st.integers(0, 2**31))
    def test_reconstruction(self, n, seed):
        rng = np.random.default_rng(seed)
        A = rng.normal(size=(n, n)) + n * np.eye(n)
        F = lu_factor(A)
        assert sorted(F.perm) == list(range(n))
        np.testing.assert_allclose(F.lower @ F.upper, A[F.perm], rtol=1e-10, atol=1e-12)


class TestLuSolve:
    def test_matches_reference_solver(self):
        rng = np.random.default_rng(7)
        A = rng.normal(size=(6, 6)) + 6 * np.eye(6)
        b = rng.normal(size=6)
        np.testing.assert_allclose(lu_solve(lu_factor(A), b), np.linalg.solve(A, b), rtol=1e-10)

    def test_identity(self):
        F = lu_factor(np.eye(4))
        b = np.array([1.0, -2.0, 3.0, 0.5])
        np.testing.assert_allclose(lu_solve(F, b), b)

    def test_rhs_length_mismatch(self):
        F = lu_factor(np.eye(3))
        with pytest.raises(ValueError):
            lu_solve(F, [1.0, 2.0])

    def test_mmatrix_inverse_is_nonnegative(self):
        # For a strictly diagonally dominant Z-matrix, A^-1 b >= 0 when b >= 0.
        rng = np.random.default_rng(2)
        for _ in range(10):
            A = -rng.random((5, 5))
            np.fill_diagonal(A, 0.0)
            A += np.diag(1.01 * (-A).sum(axis=1) + 0.1)
            y = lu_solve(lu_factor(A), rng.random(5))
            assert np.all(y >= 0.0)


class TestLowerTriSolve:
    def test_known_system(self):
        L = np.array([[2.0, 0.0], [1.0, 4.0]])
        np.testing.assert_allclose(lower_tri_solve(L, [2.0, 9.0]), [1.0, 2.0])

    def test_zero_diagonal_raises(self):
        with pytest.raises(ZeroDiagonal):
            lower_tri_solve([[0.0, 0.0], [1.0, 1.0]], [1.0, 1.0])

    def test_ignores_upper_part(self):
        L = np.array([[2.0, 99.0], [1.0, 4.0]])
        np.testing.assert_allclose(lower_tri_solve(L, [2.0, 9.0]), [1.0, 2.0])
