"""Duffing oscillator u'' + r u' + a u + b u^3 = c cos(w t) as a first-order system.

State is (u, u') and the system is generally nonautonomous, so it is exposed
as a TaylorGenerator for the resummation integrator plus a plain rhs for the
Runge-Kutta comparisons.  Two coefficient sets admit a first integral:

Case 1 (a=2/9, b=1, r=-1, c=0):
    I1 = exp(-4t/3) (u'^2 - (2/3) u u' + u^2/9 + u^4/2)
Case 2 (a=1, b=1, r=0, c=0):
    H2 = u'^2/2 + u^2/2 + u^4/4
"""

from dataclasses import dataclass
from math import factorial

import numpy as np

from ..borel import TaylorGenerator


@dataclass(frozen=True)
class DuffingProblem:
    """Coefficients of u'' + r u' + a u + b u^3 = c cos(w t)."""

    a: float
    b: float
    r: float
    c: float
    omega: float = 1.0

    def __post_init__(self):
        vals = (self.a, self.b, self.r, self.c, self.omega)
        if not np.all(np.isfinite(vals)):
            raise ValueError("Duffing coefficients must be finite")


def duffing_case1():
    return DuffingProblem(a=2.0 / 9.0, b=1.0, r=-1.0, c=0.0)


def duffing_case2():
    return DuffingProblem(a=1.0, b=1.0, r=0.0, c=0.0)


def duffing_chaotic(c):
    """Forced configuration with a=-1, b=1, r=0.3, w=1.2 at the given amplitude."""
    return DuffingProblem(a=-1.0, b=1.0, r=0.3, c=c, omega=1.2)


CHAOTIC_AMPLITUDES = (0.20, 0.28, 0.29, 0.37, 0.50, 0.65)


def duffing_rhs(prob, state, t):
    u, v = state[0], state[1]
    force = prob.c * np.cos(prob.omega * t)
    return np.array([v, -prob.r * v - prob.a * u - prob.b * u ** 3 + force])


def duffing_taylor(prob, coeffs, t0):
    """Next Taylor coefficient; the forcing expands as
    cos(w(t0+tau)) = sum_k w^k cos(w t0 + k pi/2) tau^k / k!."""
    k = len(coeffs) - 1
    u_series = np.array([c[0] for c in coeffs])
    cube = np.convolve(np.convolve(u_series, u_series), u_series)
    f_k = prob.c * prob.omega ** k * np.cos(prob.omega * t0 + 0.5 * np.pi * k) / factorial(k)
    u_next = coeffs[k][1] / (k + 1)
    v_next = (-prob.r * coeffs[k][1] - prob.a * coeffs[k][0]
              - prob.b * cube[k] + f_k) / (k + 1)
    return np.array([u_next, v_next])


def duffing_generator(prob):
    return TaylorGenerator(dim=2,
                           rule=lambda coeffs, t0: duffing_taylor(prob, coeffs, t0),
                           rhs=lambda u, t: duffing_rhs(prob, u, t))


def duffing_I1(state, t):
    """Case 1 first integral."""
    u, v = np.real(state[0]), np.real(state[1])
    return float(np.exp(-4.0 * t / 3.0)
                 * (v * v - (2.0 / 3.0) * u * v + u * u / 9.0 + 0.5 * u ** 4))


def duffing_H2(state):
    """Case 2 first integral (the energy)."""
    u, v = np.real(state[0]), np.real(state[1])
    return float(0.5 * v * v + 0.5 * u * u + 0.25 * u ** 4)


def duffing_initial_state():
    """Reference initial data u(0) = 1, u'(0) = 0."""
    return np.array([1.0, 0.0])
