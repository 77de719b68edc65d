"""Pendula as constrained Lagrangian systems in Cartesian coordinates.

The double pendulum uses q = (x1, y1, x2, y2) with the rod constraints
phi^1 = |q1|^2 - l1^2 and phi^2 = |q2 - q1|^2 - l2^2 and the gravitational
potential U = g (m1 y1 + m2 y2).  A simple pendulum and a free particle are
provided as degenerate test cases.
"""

import numpy as np

from ..dirac import ConstrainedSystem, DiracState


def free_particle(d=2, mass=1.0):
    """No potential, no constraints: uniform motion."""
    return ConstrainedSystem(
        mass=mass * np.eye(d),
        potential=lambda q: 0.0,
        grad_potential=lambda q: np.zeros(d),
    )


def simple_pendulum(mass=1.0, length=1.0, gravity=9.81):
    """Planar pendulum q = (x, y), constraint |q|^2 = length^2."""
    return ConstrainedSystem(
        mass=mass * np.eye(2),
        potential=lambda q: mass * gravity * q[1],
        grad_potential=lambda q: np.array([0.0, mass * gravity]),
        constraints=[lambda q: float(q @ q) - length ** 2],
        constraint_gradients=[lambda q: 2.0 * q],
    )


def double_pendulum(m1=1.0, m2=1.0, l1=1.0, l2=1.0, gravity=9.81):
    """Two rods attached in series, both bobs in Cartesian coordinates."""
    mass = np.diag([m1, m1, m2, m2])

    def potential(q):
        return gravity * (m1 * q[1] + m2 * q[3])

    def grad_potential(q):
        return np.array([0.0, gravity * m1, 0.0, gravity * m2])

    def phi1(q):
        return float(q[0] ** 2 + q[1] ** 2) - l1 ** 2

    def phi2(q):
        return float((q[2] - q[0]) ** 2 + (q[3] - q[1]) ** 2) - l2 ** 2

    def grad_phi1(q):
        return np.array([2.0 * q[0], 2.0 * q[1], 0.0, 0.0])

    def grad_phi2(q):
        dx, dy = q[2] - q[0], q[3] - q[1]
        return np.array([-2.0 * dx, -2.0 * dy, 2.0 * dx, 2.0 * dy])

    return ConstrainedSystem(mass=mass, potential=potential,
                             grad_potential=grad_potential,
                             constraints=[phi1, phi2],
                             constraint_gradients=[grad_phi1, grad_phi2])


def double_pendulum_state(theta1=np.pi / 2, theta2=np.pi / 2, l1=1.0, l2=1.0):
    """Admissible initial state from rod angles (measured from the vertical),
    zero momenta: x = l sin(theta), y = -l cos(theta)."""
    x1, y1 = l1 * np.sin(theta1), -l1 * np.cos(theta1)
    x2, y2 = x1 + l2 * np.sin(theta2), y1 - l2 * np.cos(theta2)
    return DiracState(q=np.array([x1, y1, x2, y2]), p=np.zeros(4))


def pendulum_angles(q):
    """Rod angles (theta1, theta2) recovered from a double-pendulum configuration."""
    theta1 = np.arctan2(q[0], -q[1])
    theta2 = np.arctan2(q[2] - q[0], -(q[3] - q[1]))
    return np.array([theta1, theta2])
