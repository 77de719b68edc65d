"""Canonical Hamiltonian systems, the J-pairing, and symplecticity diagnostics.

Phase states are flat numpy vectors u = (q_1..q_d, p_1..p_d).
"""

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import LengthMismatchError, OddLengthError, ZeroInitialEnergyError
from .linalg import fd_jacobian


@dataclass(frozen=True)
class HamiltonianSystem:
    """An autonomous Hamiltonian system in canonical coordinates.

    Parameters
    ----------
    d : degrees of freedom; phase vectors have length 2d.
    hamiltonian : u -> H(u).
    grad : u -> (dH/dq, dH/dp), flat vector of length 2d.
    separable : True when H = T(p) + V(q); lets the symplectic Euler and
        Stoermer-Verlet updates run without a stage iteration.
    taylor_rule : optional recurrence producing the next Taylor coefficient
        of the solution from the list of previous ones (used by the
        resummation integrator and the truncated-series diagnostics).
    """

    d: int
    hamiltonian: Callable[[np.ndarray], float]
    grad: Callable[[np.ndarray], np.ndarray]
    separable: bool = False
    taylor_rule: Optional[Callable] = None

    def vector_field(self, u):
        """Right-hand side J grad H of the evolution equation."""
        return apply_j(self.grad(u))


def apply_j(v):
    """Multiply a 2d-vector by the canonical skew matrix J: (v_q, v_p) -> (v_p, -v_q)."""
    v = np.asarray(v)
    if v.shape[-1] % 2 != 0:
        raise OddLengthError(f"phase vector length {v.shape[-1]} is odd")
    d = v.shape[-1] // 2
    return np.concatenate([v[..., d:], -v[..., :d]], axis=-1)


def pairing(v, w):
    """Canonical pairing v^T J w: the sum of the (q_i, p_i) plane areas."""
    v = np.asarray(v, dtype=float)
    w = np.asarray(w, dtype=float)
    if v.shape != w.shape:
        raise LengthMismatchError(f"shapes {v.shape} and {w.shape} differ")
    return float(v @ apply_j(w))


def j_matrix(d):
    """The 2d x 2d canonical skew matrix."""
    j = np.zeros((2 * d, 2 * d))
    j[:d, d:] = np.eye(d)
    j[d:, :d] = -np.eye(d)
    return j


def symplecticity_defect(system, stepper, u, dt):
    """Frobenius norm of (grad phi)^T J (grad phi) - J for a one-step map.

    `stepper` is called as stepper(system, u, dt) and may return either the
    new state or an object with a `state` attribute.  The flow gradient is a
    finite-difference Jacobian, so the defect of an exactly symplectic map
    reads at the differencing noise level (~1e-7).
    """
    u = np.asarray(u, dtype=float)
    d = u.size // 2

    def flow(x):
        out = stepper(system, x, dt)
        return getattr(out, "state", out)

    g = fd_jacobian(flow, u)
    j = j_matrix(d)
    return float(np.linalg.norm(g.T @ j @ g - j))


def hamiltonian_drift(trajectory, system):
    """Relative energy error |H(u_n) - H(u_0)| / |H(u_0)| along a trajectory."""
    states = list(trajectory)
    if not states:
        raise ValueError("empty trajectory")
    h0 = system.hamiltonian(np.asarray(states[0], dtype=float))
    if h0 == 0.0:
        raise ZeroInitialEnergyError("H(u0) = 0, relative drift undefined")
    return np.array([abs(system.hamiltonian(np.asarray(u, dtype=float)) - h0) / abs(h0)
                     for u in states])
