"""Tests for the dense linear-algebra kernels."""

import numpy as np
import pytest

from spint.errors import NoConvergenceError, NotSymmetricError, SingularMatrixError
from spint.linalg import fd_jacobian, solve_dense, svd_small, sym_eigenvalues, sym_eigh

rng = np.random.default_rng(12345)


class TestSolveDense:
    def test_identity(self):
        b = np.array([1.0, 2.0, 3.0])
        np.testing.assert_allclose(solve_dense(np.eye(3), b), b)

    def test_diagonal(self):
        x = solve_dense(np.array([[2.0, 0.0], [0.0, 4.0]]), np.array([2.0, 8.0]))
        np.testing.assert_allclose(x, [1.0, 2.0])

    def test_round_trip_random(self):
        a = rng.standard_normal((5, 5))
        x = rng.standard_normal(5)
        sol = solve_dense(a.copy(), a @ x)
        np.testing.assert_allclose(sol, x, atol=1e-10)

    def test_residual_bound(self):
        a = rng.standard_normal((8, 8))
        b = rng.standard_normal(8)
        x = solve_dense(a.copy(), b)
        res = np.max(np.abs(a @ x - b))
        bound = 1e-10 * (np.max(np.abs(a)) * np.max(np.abs(x)) + np.max(np.abs(b)))
        assert res <= bound

    def test_multiple_rhs(self):
        a = rng.standard_normal((4, 4))
        xs = rng.standard_normal((4, 3))
        sol = solve_dense(a.copy(), a @ xs)
        np.testing.assert_allclose(sol, xs, atol=1e-10)

    def test_complex(self):
        a = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        x = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        np.testing.assert_allclose(solve_dense(a.copy(), a @ x), x, atol=1e-10)

    def test_singular_raises(self):
        with pytest.raises(SingularMatrixError):
            solve_dense(np.array([[1.0, 2.0], [2.0, 4.0]]), np.array([1.0, 2.0]))


class TestSymEig:
    def test_diagonal(self):
        np.testing.assert_allclose(sym_eigenvalues(np.diag([3.0, 1.0, 2.0])),
                                   [1.0, 2.0, 3.0], atol=1e-12)

    def test_swap(self):
        np.testing.assert_allclose(sym_eigenvalues(np.array([[0.0, 1.0], [1.0, 0.0]])),
                                   [-1.0, 1.0], atol=1e-12)

    def test_trace_and_det(self):
        a = rng.standard_normal((3, 3))
        a = a + a.T
        vals = sym_eigenvalues(a)
        assert abs(np.sum(vals) - np.trace(a)) <= 1e-12 * np.linalg.norm(a)
        assert abs(np.prod(vals) - np.linalg.det(a)) <= 1e-10 * max(1.0, abs(np.linalg.det(a)))

    def test_eigenvectors(self):
        a = rng.standard_normal((6, 6))
        a = a + a.T
        vals, vecs = sym_eigh(a)
        np.testing.assert_allclose(a @ vecs, vecs * vals[None, :], atol=1e-10)
        np.testing.assert_allclose(vecs.T @ vecs, np.eye(6), atol=1e-10)

    def test_not_symmetric_raises(self):
        with pytest.raises(NotSymmetricError):
            sym_eigenvalues(np.array([[0.0, 1.0], [0.0, 0.0]]))


class TestSvdSmall:
    def test_diagonal(self):
        _, s, _ = svd_small(np.diag([2.0, 1.0]))
        np.testing.assert_allclose(s, [2.0, 1.0], atol=1e-12)

    def test_rank_one(self):
        u = np.array([1.0, 0.0])
        v = np.array([0.6, 0.8])
        _, s, _ = svd_small(np.outer(u, v))
        np.testing.assert_allclose(s, [1.0, 0.0], atol=1e-12)

    def test_round_trip_4x6(self):
        a = rng.standard_normal((4, 6))
        u, s, v = svd_small(a)
        rebuilt = u[:, :4] @ np.diag(s) @ v[:, :4].conj().T
        np.testing.assert_allclose(rebuilt, a, atol=1e-10 * np.max(np.abs(a)))

    def test_orthogonality(self):
        a = rng.standard_normal((5, 3))
        u, _, v = svd_small(a)
        np.testing.assert_allclose(u.T @ u, np.eye(5), atol=1e-10)
        np.testing.assert_allclose(v.T @ v, np.eye(3), atol=1e-10)

    def test_complex_round_trip(self):
        a = rng.standard_normal((3, 5)) + 1j * rng.standard_normal((3, 5))
        u, s, v = svd_small(a)
        rebuilt = u[:, :3] @ np.diag(s) @ v[:, :3].conj().T
        np.testing.assert_allclose(rebuilt, a, atol=1e-10 * np.max(np.abs(a)))

    def test_descending(self):
        a = rng.standard_normal((6, 6))
        _, s, _ = svd_small(a)
        assert np.all(np.diff(s) <= 1e-12)

    def test_size_limit(self):
        with pytest.raises(ValueError):
            svd_small(np.zeros((65, 2)))


class TestFdJacobian:
    def test_identity(self):
        jac = fd_jacobian(lambda x: x, np.array([1.0, -2.0]))
        np.testing.assert_allclose(jac, np.eye(2), atol=1e-12)

    def test_quadratic(self):
        jac = fd_jacobian(lambda x: np.array([x[0] ** 2, x[1]]),
                          np.array([3.0, 1.0]), h=1e-5)
        np.testing.assert_allclose(jac, [[6.0, 0.0], [0.0, 1.0]], atol=1e-8)

    def test_linear_exact(self):
        a = rng.standard_normal((3, 3))
        jac = fd_jacobian(lambda x: a @ x, np.array([0.3, -0.1, 2.0]), h=0.1)
        np.testing.assert_allclose(jac, a, atol=1e-12)
