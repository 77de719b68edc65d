"""Constraint-respecting integrators for Lagrangian systems L = v'Mv/2 - U(q).

The step solves, for the discrete velocity v^n and multipliers lambda,

    M v^n + A_d lambda = p^n - dt * grad U(q^n)
    A_d^T v^n          = 0

where A_d stacks the discrete constraint one-forms: the constraint gradients
averaged between the stencil endpoints, A_d = (A(q_from) + A(q_to)) / 2.
For the quadratic holonomic constraints shipped here this choice telescopes,
phi(q_to) = phi(q_from) exactly, so the holonomic residual stays at the
round-off level instead of drifting; gradients frozen at q^n would grow the
residual linearly in time.  Since A_d depends on the unknown endpoint, the
saddle system is solved by a short fixed-point iteration on A_d (contraction
factor O(dt)).

The one-step stencil v^n = (q^{n+1} - q^n)/dt is labelled dirac1; the
two-step stencil v^n = (q^{n+1} - q^{n-1})/(2 dt) is dirac2.  In both cases
p^{n+1} = M v^n.  An explicit Euler scheme with acceleration-level
multipliers is provided as the degradation control.
"""

from dataclasses import dataclass, field
from typing import Callable, List, Optional

import numpy as np

from .errors import MissingHistoryError, RankDeficientConstraintsError, SolveFailureError
from .linalg import fd_jacobian, solve_dense, svd_small


@dataclass(frozen=True)
class ConstrainedSystem:
    """Lagrangian data: mass matrix, potential, and holonomic constraints."""

    mass: np.ndarray
    potential: Callable[[np.ndarray], float]
    grad_potential: Callable[[np.ndarray], np.ndarray]
    constraints: List[Callable[[np.ndarray], float]] = field(default_factory=list)
    constraint_gradients: List[Callable[[np.ndarray], np.ndarray]] = field(default_factory=list)

    def __post_init__(self):
        object.__setattr__(self, "mass", np.asarray(self.mass, dtype=float))
        if len(self.constraints) != len(self.constraint_gradients):
            raise ValueError("each constraint needs its gradient")
        # positive definiteness check via Cholesky
        np.linalg.cholesky(self.mass)

    @property
    def d(self):
        return self.mass.shape[0]

    @property
    def m(self):
        return len(self.constraints)

    def constraint_matrix(self, q):
        """d x m matrix whose columns are the constraint gradients at q."""
        if self.m == 0:
            return np.zeros((self.d, 0))
        return np.column_stack([g(q) for g in self.constraint_gradients])


@dataclass(frozen=True)
class DiracState:
    """Configuration, momentum, the previous configuration (two-step stencil),
    and the multipliers of the last step."""

    q: np.ndarray
    p: np.ndarray
    q_prev: Optional[np.ndarray] = None
    lam: Optional[np.ndarray] = None


def _check_rank(sys, q):
    if sys.m == 0:
        return
    _, sing, _ = svd_small(sys.constraint_matrix(q))
    if sing[-1] <= 1e-10:
        raise RankDeficientConstraintsError(
            f"smallest constraint-gradient singular value {sing[-1]:.3e}")


def _solve_saddle(sys, a_d, rhs, dt):
    """Solve M v + A_d lambda = rhs, A_d^T v = 0 for (v, lambda)."""
    d, m = sys.d, sys.m
    k = np.zeros((d + m, d + m))
    k[:d, :d] = sys.mass
    k[:d, d:] = a_d
    k[d:, :d] = a_d.T / dt  # row scaling keeps the system well conditioned
    full_rhs = np.concatenate([rhs, np.zeros(m)])
    sol = solve_dense(k, full_rhs)
    return sol[:d], sol[d:]


def _solve_velocity(sys, q_from, rhs, dt, stretch):
    """Fixed-point iteration on the discrete one-form A_d.

    The stencil endpoint is q_from + stretch * v; A_d is the average of the
    constraint gradients at q_from and at that endpoint.
    """
    _check_rank(sys, q_from)
    a_from = sys.constraint_matrix(q_from)
    a_d = a_from
    v = lam = None
    prev_inc = np.inf
    for _ in range(50):
        v_new, lam = _solve_saddle(sys, a_d, rhs, dt)
        if v is not None:
            inc = float(np.max(np.abs(v_new - v)))
            scale = max(1.0, float(np.max(np.abs(v_new))))
            if inc <= 1e-13 * scale:
                return v_new, lam
            if inc >= prev_inc and inc <= 1e-8 * scale:
                return v_new, lam  # round-off floor of the contraction
            prev_inc = inc
        v = v_new
        if sys.m == 0:
            return v, lam
        a_d = 0.5 * (a_from + sys.constraint_matrix(q_from + stretch * v))
    raise SolveFailureError("discrete one-form iteration did not converge")


def dirac1_step(sys, st, dt):
    """One-step Dirac integrator."""
    rhs = st.p - dt * sys.grad_potential(st.q)
    v, lam = _solve_velocity(sys, st.q, rhs, dt, stretch=dt)
    return DiracState(q=st.q + dt * v, p=sys.mass @ v, q_prev=st.q, lam=lam)


def dirac2_step(sys, st, dt):
    """Two-step Dirac integrator; requires the previous configuration."""
    if st.q_prev is None:
        raise MissingHistoryError("dirac2 needs a previous configuration; bootstrap with dirac1")
    rhs = st.p - dt * sys.grad_potential(st.q)
    v, lam = _solve_velocity(sys, st.q_prev, rhs, dt, stretch=2.0 * dt)
    return DiracState(q=st.q_prev + 2.0 * dt * v, p=sys.mass @ v, q_prev=st.q, lam=lam)


def constraint_residual(sys, st):
    """max_a |phi^a(q)|."""
    if sys.m == 0:
        return 0.0
    return float(max(abs(phi(st.q)) for phi in sys.constraints))


def euler_constrained_control(sys, st, dt):
    """Explicit Euler with multipliers from the acceleration-level constraint.

    Standard index reduction: differentiate phi(q) = 0 twice, solve the
    saddle system for the acceleration, then step q and p explicitly.  Used
    only as the comparison baseline; its constraint drift is the point.
    """
    d, m = sys.d, sys.m
    q, p = st.q, st.p
    v = solve_dense(sys.mass.copy(), p)
    _check_rank(sys, q)
    a_mat = sys.constraint_matrix(q)
    k = np.zeros((d + m, d + m))
    k[:d, :d] = sys.mass
    k[:d, d:] = a_mat
    k[d:, :d] = a_mat.T
    rhs = np.concatenate([-sys.grad_potential(q), np.empty(m)])
    for a_idx, grad in enumerate(sys.constraint_gradients):
        hess = fd_jacobian(grad, q)
        rhs[d + a_idx] = -v @ ((hess + hess.T) / 2.0) @ v
    sol = solve_dense(k, rhs)
    accel, lam = sol[:d], sol[d:]
    return DiracState(q=q + dt * v, p=p + dt * (sys.mass @ accel), q_prev=q,
                      lam=lam if m else None)


def run_dirac(sys, state0, dt, n_steps, method="dirac1", record_stride=1):
    """Integrate with dirac1/dirac2/euler steps; returns (times, states).

    dirac2 bootstraps its first step with dirac1.
    """
    steppers = {"dirac1": dirac1_step, "dirac2": dirac2_step,
                "euler": euler_constrained_control}
    step = steppers[method]
    st = state0
    times, states = [0.0], [st]
    for k in range(1, n_steps + 1):
        if method == "dirac2" and st.q_prev is None:
            st = dirac1_step(sys, st, dt)
        else:
            st = step(sys, st, dt)
        if k % record_stride == 0 or k == n_steps:
            times.append(k * dt)
            states.append(st)
    return np.array(times), states


def constrained_energy(sys, st):
    """Hamiltonian p' M^-1 p / 2 + U(q) of the constrained system."""
    v = solve_dense(sys.mass.copy(), st.p)
    return 0.5 * float(st.p @ v) + sys.potential(st.q)
