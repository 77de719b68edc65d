"""Harmonic and quartic oscillators, mostly as test problems with known solutions."""

import numpy as np

from ..hamiltonian import HamiltonianSystem


def harmonic_oscillator():
    """H = (p^2 + q^2) / 2; the exact flow is a rotation of the phase plane."""

    def hamiltonian(u):
        return 0.5 * float(u @ u)

    def grad(u):
        return u.copy()

    def taylor_rule(coeffs, t0):
        n = len(coeffs)
        prev = coeffs[-1]
        return np.array([prev[1], -prev[0]]) / n

    return HamiltonianSystem(d=1, hamiltonian=hamiltonian, grad=grad,
                             separable=True, taylor_rule=taylor_rule)


def harmonic_exact(u0, t):
    """Exact rotation solution of the harmonic oscillator."""
    q0, p0 = u0
    return np.array([q0 * np.cos(t) + p0 * np.sin(t),
                     -q0 * np.sin(t) + p0 * np.cos(t)])


def quartic_oscillator():
    """H = p^2/2 + q^2/2 + q^4/4; nonlinear, so no accidental parity cancellations
    in the truncated-series symplecticity defect."""

    def hamiltonian(u):
        q, p = u
        return 0.5 * p * p + 0.5 * q * q + 0.25 * q ** 4

    def grad(u):
        q, p = u
        return np.array([q + q ** 3, p])

    def taylor_rule(coeffs, t0):
        n = len(coeffs)
        q_series = np.array([c[0] for c in coeffs])
        cube = np.convolve(np.convolve(q_series, q_series), q_series)
        prev = coeffs[-1]
        return np.array([prev[1], -prev[0] - cube[n - 1]]) / n

    return HamiltonianSystem(d=1, hamiltonian=hamiltonian, grad=grad,
                             separable=True, taylor_rule=taylor_rule)
