"""Planar gravitational n-body problem and the figure-eight choreography.

State layout: q = (x_1, y_1, ..., x_nb, y_nb) followed by the momenta in the
same order, so a system of nb bodies has 2*nb degrees of freedom.
"""

import numpy as np

from ..errors import CollisionSingularityError
from ..hamiltonian import HamiltonianSystem
from ..steppers import integrate_rk4

FIGURE_EIGHT_PERIOD = 6.32591398

COLLISION_THRESHOLD = 1e-8


def _pair_distances(pos):
    nb = pos.shape[0]
    diff = pos[:, None, :] - pos[None, :, :]
    dist = np.sqrt(np.sum(diff ** 2, axis=2))
    return diff, dist


def nbody_hamiltonian(state, masses, g_const=1.0):
    nb = len(masses)
    pos = state[:2 * nb].reshape(nb, 2)
    mom = state[2 * nb:].reshape(nb, 2)
    kinetic = 0.5 * float(np.sum(np.sum(mom ** 2, axis=1) / masses))
    _, dist = _pair_distances(pos)
    iu = np.triu_indices(nb, 1)
    if np.any(dist[iu] < COLLISION_THRESHOLD):
        raise CollisionSingularityError("bodies closer than the collision threshold")
    potential = -g_const * float(np.sum(masses[iu[0]] * masses[iu[1]] / dist[iu]))
    return kinetic + potential


def nbody_grad(state, masses, g_const=1.0):
    nb = len(masses)
    pos = state[:2 * nb].reshape(nb, 2)
    mom = state[2 * nb:].reshape(nb, 2)
    diff, dist = _pair_distances(pos)
    iu = np.triu_indices(nb, 1)
    if np.any(dist[iu] < COLLISION_THRESHOLD):
        raise CollisionSingularityError("bodies closer than the collision threshold")
    np.fill_diagonal(dist, 1.0)
    inv3 = 1.0 / dist ** 3
    np.fill_diagonal(inv3, 0.0)
    coeff = g_const * masses[:, None] * masses[None, :] * inv3
    grad_q = np.sum(coeff[:, :, None] * diff, axis=1)
    grad_p = mom / masses[:, None]
    return np.concatenate([grad_q.ravel(), grad_p.ravel()])


def nbody_system(masses, g_const=1.0):
    masses = np.asarray(masses, dtype=float)
    return HamiltonianSystem(
        d=2 * len(masses),
        hamiltonian=lambda u: nbody_hamiltonian(u, masses, g_const),
        grad=lambda u: nbody_grad(u, masses, g_const),
        separable=True,
    )


def angular_momentum(state, nb):
    """Total planar angular momentum sum_k (x_k p_y,k - y_k p_x,k)."""
    pos = state[:2 * nb].reshape(nb, 2)
    mom = state[2 * nb:].reshape(nb, 2)
    return float(np.sum(pos[:, 0] * mom[:, 1] - pos[:, 1] * mom[:, 0]))


def figure_eight_initial():
    """Initial data of the figure-eight choreography (three unit masses, G = 1).

    The constants are the standard ones; they are validated by the
    periodicity of the resulting orbit at T = 6.32591398.
    """
    x1 = np.array([0.97000436, -0.24308753])
    v3 = np.array([-0.93240737, -0.86473146])
    positions = np.array([x1, -x1, [0.0, 0.0]])
    velocities = np.array([-v3 / 2.0, -v3 / 2.0, v3])
    return np.concatenate([positions.ravel(), velocities.ravel()])


def perturbed_initial(n_fine_steps=20000):
    """Figure-eight data with the middle body advanced to its state at T/80.

    The middle body's position and momentum are replaced by their values at
    t = T/80 along the fine-integrated figure-eight solution; the two end
    bodies keep their original data.  This breaks the choreography.
    """
    system = nbody_system(np.ones(3))
    u0 = figure_eight_initial()
    u_shift = integrate_rk4(lambda u, t: system.vector_field(u), u0,
                            0.0, FIGURE_EIGHT_PERIOD / 80.0, n_fine_steps)
    u = u0.copy()
    u[4:6] = u_shift[4:6]      # middle body position
    u[10:12] = u_shift[10:12]  # middle body momentum
    return u
