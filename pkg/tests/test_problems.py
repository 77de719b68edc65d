"""Tests for the benchmark problems: gradients, invariants, exact solutions."""

import math

import numpy as np
import pytest

from spint.borel import generate_series
from spint.errors import CollisionSingularityError
from spint.linalg import fd_jacobian
from spint.problems import (
    FIGURE_EIGHT_PERIOD,
    KdvSpectral,
    angular_momentum,
    duffing_H2,
    duffing_I1,
    duffing_case1,
    duffing_case2,
    duffing_chaotic,
    duffing_generator,
    duffing_initial_state,
    duffing_rhs,
    enforce_symmetry,
    figure_eight_initial,
    kdv_exact_coeffs,
    kdv_generator,
    kdv_initial,
    kdv_l2_error,
    kdv_rhs,
    kdv_taylor_coeffs,
    lax_eigenvalues,
    lax_matrix,
    nbody_grad,
    nbody_hamiltonian,
    nbody_system,
    perturbed_initial,
    symmetry_defect,
    toda_grad,
    toda_hamiltonian,
    toda_initial_state,
    toda_system,
)
from spint.steppers import integrate_rk4, rk4_ode_step

rng = np.random.default_rng(99)


class TestToda:
    def test_hamiltonian_value(self):
        h = toda_hamiltonian(toda_initial_state())
        expected = 1.75 + np.exp(-2.0) + np.exp(-1.0) + np.exp(3.0)
        assert h == pytest.approx(expected, abs=1e-12)

    def test_equilibrium_gradient(self):
        state = np.array([1.0, 1.0, 1.0, 0.0, 0.0, 0.0])
        np.testing.assert_allclose(toda_grad(state)[:3], 0.0, atol=1e-14)

    def test_grad_matches_fd(self):
        u = rng.standard_normal(6)
        fd = fd_jacobian(lambda x: np.array([toda_hamiltonian(x)]), u)[0]
        np.testing.assert_allclose(toda_grad(u), fd, atol=1e-8)

    def test_lax_trace(self):
        u = toda_initial_state()
        assert np.trace(lax_matrix(u)) == pytest.approx(-0.5 * np.sum(u[3:]), abs=1e-14)

    def test_lax_equal_q_circulant(self):
        state = np.array([2.0, 2.0, 2.0, 0.0, 0.0, 0.0])
        np.testing.assert_allclose(lax_eigenvalues(state), [-0.5, -0.5, 1.0], atol=1e-12)

    def test_initial_lax_eigenvalues(self):
        # characteristic-polynomial cross-check: eigenvalues sum to zero (trace)
        eigs = lax_eigenvalues(toda_initial_state())
        np.testing.assert_allclose(
            eigs, [-2.62196573, 0.6562618, 1.96570394], atol=1e-7)
        assert abs(np.sum(eigs)) <= 1e-12

    def test_isospectral_along_flow(self):
        system = toda_system()
        u0 = toda_initial_state()
        eig0 = lax_eigenvalues(u0)
        u = integrate_rk4(lambda x, t: system.vector_field(x), u0, 0.0, 10.0, 20000)
        assert np.max(np.abs(lax_eigenvalues(u) - eig0)) <= 1e-6

    def test_taylor_first_coefficient(self):
        system = toda_system()
        u0 = toda_initial_state()
        from spint.borel import TaylorGenerator
        gen = TaylorGenerator(dim=6, rule=system.taylor_rule,
                              rhs=lambda u, t: system.vector_field(np.real(u)))
        series = generate_series(gen, u0.astype(complex), 0.0, 4)
        np.testing.assert_allclose(np.real(series.coeffs[1]),
                                   system.vector_field(u0), atol=1e-14)


class TestNbody:
    def test_two_bodies_at_rest(self):
        masses = np.array([1.0, 2.0])
        state = np.array([0.0, 0.0, 3.0, 0.0, 0.0, 0.0, 0.0, 0.0])
        assert nbody_hamiltonian(state, masses) == pytest.approx(-2.0 / 3.0, abs=1e-14)

    def test_grad_matches_fd(self):
        masses = np.ones(3)
        u = figure_eight_initial()
        fd = fd_jacobian(lambda x: np.array([nbody_hamiltonian(x, masses)]), u)[0]
        np.testing.assert_allclose(nbody_grad(u, masses), fd, atol=1e-7)

    def test_collision_raises(self):
        masses = np.ones(2)
        state = np.zeros(8)
        with pytest.raises(CollisionSingularityError):
            nbody_hamiltonian(state, masses)

    def test_figure_eight_symmetry(self):
        u0 = figure_eight_initial()
        momenta = u0[6:].reshape(3, 2)
        np.testing.assert_allclose(momenta.sum(axis=0), 0.0, atol=1e-12)
        positions = u0[:6].reshape(3, 2)
        np.testing.assert_allclose(positions.sum(axis=0), 0.0, atol=1e-12)

    def test_figure_eight_periodicity(self):
        system = nbody_system(np.ones(3))
        u0 = figure_eight_initial()
        u = integrate_rk4(lambda x, t: system.vector_field(x), u0, 0.0,
                          FIGURE_EIGHT_PERIOD, 100000)
        assert np.max(np.abs(u - u0)) <= 1e-6

    def test_perturbed_touches_middle_body_only(self):
        u0 = figure_eight_initial()
        up = perturbed_initial(n_fine_steps=2000)
        same = np.r_[0:4, 6:10]
        np.testing.assert_allclose(up[same], u0[same])
        assert np.max(np.abs(up[4:6] - u0[4:6])) > 1e-3

    def test_angular_momentum_value(self):
        state = np.array([1.0, 0.0, 0.0, 1.0])  # one body at (1,0) with p=(0,1)
        assert angular_momentum(state, 1) == pytest.approx(1.0)


class TestDuffing:
    def test_case1_integral_value(self):
        assert duffing_I1(duffing_initial_state(), 0.0) == pytest.approx(11.0 / 18.0)

    def test_case2_integral_value(self):
        assert duffing_H2(duffing_initial_state()) == pytest.approx(0.75)

    def test_case1_integral_conserved(self):
        prob = duffing_case1()
        u = duffing_initial_state()
        t, dt = 0.0, 1e-3
        vals = [duffing_I1(u, t)]
        for _ in range(5000):
            u = rk4_ode_step(lambda x, s: duffing_rhs(prob, x, s), u, t, dt)
            t += dt
            vals.append(duffing_I1(u, t))
        assert np.max(np.abs(np.array(vals) - vals[0])) <= 1e-8

    def test_case2_energy_conserved(self):
        prob = duffing_case2()
        u = duffing_initial_state()
        for k in range(5000):
            u = rk4_ode_step(lambda x, s: duffing_rhs(prob, x, s), u, k * 1e-3, 1e-3)
        assert abs(duffing_H2(u) - 0.75) <= 1e-8

    def test_taylor_matches_trajectory(self):
        # resum the Taylor series at a small offset against a fine RK4 solution
        prob = duffing_chaotic(0.5)
        gen = duffing_generator(prob)
        series = generate_series(gen, duffing_initial_state().astype(complex), 0.0, 12)
        tau = 0.01
        from_series = np.real(np.sum(
            series.coeffs * tau ** np.arange(13)[:, None], axis=0))
        reference = integrate_rk4(lambda x, s: duffing_rhs(prob, x, s),
                                  duffing_initial_state(), 0.0, tau, 2000)
        np.testing.assert_allclose(from_series, reference, atol=1e-12)

    def test_forcing_expansion(self):
        # nonautonomous expansion around t0 != 0 must track the cosine
        prob = duffing_chaotic(0.3)
        gen = duffing_generator(prob)
        u0 = np.array([0.2, -0.4])
        series = generate_series(gen, u0.astype(complex), 1.7, 12)
        tau = 0.02
        from_series = np.real(np.sum(
            series.coeffs * tau ** np.arange(13)[:, None], axis=0))
        reference = integrate_rk4(lambda x, s: duffing_rhs(prob, x, s), u0,
                                  1.7, 1.7 + tau, 2000)
        np.testing.assert_allclose(from_series, reference, atol=1e-12)


class TestKdv:
    def test_constants(self):
        spec = KdvSpectral()
        assert spec.c0 == pytest.approx(np.sqrt(20.0), abs=1e-10)
        assert spec.c == pytest.approx(5.031152949, abs=1e-6)
        assert spec.period == pytest.approx(14.986, abs=1e-2)
        assert spec.kappa == pytest.approx(0.21650635, abs=1e-7)

    def test_initial_symmetry(self):
        spec = KdvSpectral(M=16)
        assert symmetry_defect(kdv_initial(spec)) <= 1e-12

    def test_zero_state_taylor(self):
        spec = KdvSpectral(M=8)
        nxt = kdv_taylor_coeffs(spec, [np.zeros(17, dtype=complex)], 0.0)
        np.testing.assert_allclose(nxt, 0.0)

    def test_linear_dispersion_single_mode(self):
        # with the nonlinearity off, one mode rotates at the linear symbol
        spec = KdvSpectral(M=4)
        object.__setattr__(spec, "alpha", 0.0)
        u = np.zeros(9, dtype=complex)
        u[5] = 1e-3  # mode m = 1
        u[3] = 1e-3  # conjugate mode m = -1
        lam = spec.linear_symbol()[5]
        coeffs = [u]
        for _ in range(6):
            coeffs.append(kdv_taylor_coeffs(spec, coeffs, 0.0))
        for k, c in enumerate(coeffs):
            assert c[5] == pytest.approx(1e-3 * lam ** k / math.factorial(k),
                                         abs=1e-18)

    def test_symmetry_preserved_through_orders(self):
        spec = KdvSpectral(M=8)
        u = enforce_symmetry(rng.standard_normal(17) + 1j * rng.standard_normal(17))
        coeffs = [u]
        for _ in range(10):
            coeffs.append(kdv_taylor_coeffs(spec, coeffs, 0.0))
        assert max(symmetry_defect(c) for c in coeffs) <= 1e-12

    def test_exact_self_comparison(self):
        spec = KdvSpectral(M=16)
        assert kdv_l2_error(spec, kdv_exact_coeffs(spec, 3.0), 3.0) <= 1e-12

    def test_semidiscrete_tracks_soliton(self):
        spec = KdvSpectral()
        u = kdv_initial(spec).astype(complex)
        t_end = spec.period / 10.0
        u = integrate_rk4(lambda x, t: kdv_rhs(spec, x, t), u, 0.0, t_end, 3000)
        assert kdv_l2_error(spec, u, t_end) <= 1e-5
