"""One-step integrators on Hamiltonian systems.

Explicit and implicit Euler, both symplectic Euler variants, Stoermer-Verlet,
the classical RK4, and generic (implicit) Runge-Kutta schemes given by a
Butcher tableau, including the 3-stage symplectic scheme of order 4.

Implicit stage equations are solved by fixed-point iteration with a chord
Newton fallback (Jacobian frozen at the step's base point).
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import NonFiniteEvaluationError, StageSolveError
from .hamiltonian import apply_j
from .linalg import fd_jacobian, solve_dense

FIXED_POINT_TOL = 1e-13
MAX_FIXED_POINT_ITERS = 100
MAX_NEWTON_ITERS = 50


@dataclass(frozen=True)
class ButcherTableau:
    """Runge-Kutta coefficients: stage matrix a (s x s), weights b, order."""

    a: np.ndarray
    b: np.ndarray
    order: int

    def __post_init__(self):
        a = np.atleast_2d(np.asarray(self.a, dtype=float))
        b = np.atleast_1d(np.asarray(self.b, dtype=float))
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        if a.shape != (b.size, b.size):
            raise ValueError("stage matrix and weights are inconsistent")
        if abs(np.sum(b) - 1.0) > 1e-14:
            raise ValueError("weights must sum to 1")

    @property
    def s(self):
        return self.b.size

    @property
    def is_explicit(self):
        return bool(np.all(np.abs(np.triu(self.a)) == 0.0))


@dataclass
class StepReport:
    """Result of one implicit step: the new state plus solver statistics."""

    state: np.ndarray
    iterations: int = 0
    residual: float = 0.0


def rk4sym_tableau():
    """The 3-stage, order-4 symplectic Runge-Kutta tableau.

    Built from the weight b = 1/(2 - 2^(1/3)) = (2 + 2^(1/3) + 2^(-1/3))/3,
    the unique real solution of 2*b^3 + (1 - 2*b)^3 = 0 that makes the
    symmetric composition (b, 1-2b, b) of midpoint-type stages 4th order.
    """
    b = (2.0 + 2.0 ** (1.0 / 3.0) + 2.0 ** (-1.0 / 3.0)) / 3.0
    a = np.array([
        [b / 2.0, 0.0, 0.0],
        [b, 0.5 - b, 0.0],
        [b, 1.0 - 2.0 * b, b / 2.0],
    ])
    return ButcherTableau(a=a, b=np.array([b, 1.0 - 2.0 * b, b]), order=4)


def rk4_tableau():
    """Classical explicit 4-stage RK4 tableau (not symplectic)."""
    a = np.zeros((4, 4))
    a[1, 0] = 0.5
    a[2, 1] = 0.5
    a[3, 2] = 1.0
    return ButcherTableau(a=a, b=np.array([1, 2, 2, 1]) / 6.0, order=4)


def implicit_midpoint_tableau():
    return ButcherTableau(a=np.array([[0.5]]), b=np.array([1.0]), order=2)


def check_symplectic_condition(tab):
    """max_ij |b_i b_j - b_i a_ij - b_j a_ji|; zero for symplectic tableaux."""
    b = tab.b
    defect = np.outer(b, b) - b[:, None] * tab.a - b[None, :] * tab.a.T
    return float(np.max(np.abs(defect)))


def _check_finite(u):
    if not np.all(np.isfinite(u)):
        raise NonFiniteEvaluationError("non-finite state encountered")
    return u


def explicit_euler_step(system, u, dt):
    u = np.asarray(u, dtype=float)
    return _check_finite(u + dt * system.vector_field(u))


def rk4_step(system, u, dt):
    """Classical 4th-order Runge-Kutta step."""
    u = np.asarray(u, dtype=float)
    f = system.vector_field
    f1 = f(u)
    f2 = f(u + 0.5 * dt * f1)
    f3 = f(u + 0.5 * dt * f2)
    f4 = f(u + dt * f3)
    return _check_finite(u + dt * (f1 + 2.0 * f2 + 2.0 * f3 + f4) / 6.0)


def _fixed_point(update, x0, tol, max_iters):
    """Iterate x <- update(x); return (x, iters, residual, converged)."""
    x = x0
    res = np.inf
    for it in range(1, max_iters + 1):
        x_new = update(x)
        res = float(np.max(np.abs(x_new - x)))
        x = x_new
        if not np.all(np.isfinite(x)):
            return x, it, np.inf, False
        if res <= tol:
            return x, it, res, True
    return x, max_iters, res, False


def _newton_on_residual(residual_fn, x0, tol, label):
    x = np.asarray(x0, dtype=float).copy()
    for it in range(1, MAX_NEWTON_ITERS + 1):
        r = residual_fn(x)
        if np.max(np.abs(r)) <= tol:
            return x, it, float(np.max(np.abs(r)))
        jac = fd_jacobian(residual_fn, x)
        x = x - solve_dense(jac, r)
    raise StageSolveError(f"{label}: Newton fallback did not converge")


def symplectic_euler_step(system, u, dt, variant="A"):
    """One step of the symplectic Euler scheme.

    Variant A evaluates the right-hand side at (q^n, p^{n+1}); variant B is
    the mirrored scheme using (q^{n+1}, p^n).  For separable Hamiltonians
    both variants are explicit.
    """
    u = np.asarray(u, dtype=float)
    d = system.d
    q, p = u[:d], u[d:]
    tol = 1e-12 * max(1.0, float(np.max(np.abs(u))))

    def grad_q(qv, pv):
        return system.grad(np.concatenate([qv, pv]))[:d]

    def grad_p(qv, pv):
        return system.grad(np.concatenate([qv, pv]))[d:]

    if variant == "A":
        if system.separable:
            p1 = p - dt * grad_q(q, p)
            iters = 0
        else:
            p1, iters, res, ok = _fixed_point(lambda x: p - dt * grad_q(q, x), p, tol, 50)
            if not ok:
                p1, iters, res = _newton_on_residual(
                    lambda x: x - p + dt * grad_q(q, x), p, tol, "symplectic Euler A")
        q1 = q + dt * grad_p(q, p1)
    elif variant == "B":
        if system.separable:
            q1 = q + dt * grad_p(q, p)
            iters = 0
        else:
            q1, iters, res, ok = _fixed_point(lambda x: q + dt * grad_p(x, p), q, tol, 50)
            if not ok:
                q1, iters, res = _newton_on_residual(
                    lambda x: x - q - dt * grad_p(x, p), q, tol, "symplectic Euler B")
        p1 = p - dt * grad_q(q1, p)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    state = _check_finite(np.concatenate([q1, p1]))
    return StepReport(state=state, iterations=iters)


def implicit_euler_step(system, u, dt):
    """Implicit Euler: u1 = u + dt J grad H(u1).  Non-symplectic control scheme."""
    u = np.asarray(u, dtype=float)
    tol = 1e-12 * max(1.0, float(np.max(np.abs(u))))
    u1, iters, res, ok = _fixed_point(lambda x: u + dt * system.vector_field(x), u,
                                      tol, MAX_FIXED_POINT_ITERS)
    if not ok:
        u1, iters, res = _newton_on_residual(
            lambda x: x - u - dt * system.vector_field(x), u, tol, "implicit Euler")
    return StepReport(state=_check_finite(u1), iterations=iters, residual=res)


def stormer_verlet_step(system, u, dt):
    """Stoermer-Verlet: symplectic Euler A then B, each with half step.  Order 2."""
    first = symplectic_euler_step(system, u, dt / 2.0, variant="A")
    second = symplectic_euler_step(system, first.state, dt / 2.0, variant="B")
    return StepReport(state=second.state, iterations=first.iterations + second.iterations)


def irk_step(system, u, dt, tab):
    """One s-stage Runge-Kutta step U_i = u + dt sum_j a_ij f(U_j).

    Explicit tableaux are evaluated directly.  Implicit stages are solved by
    fixed-point iteration on all stages simultaneously (tolerance 1e-13 on
    the stage increment); if that fails to contract, a chord Newton
    iteration with the Jacobian frozen at u takes over.
    """
    u = np.asarray(u, dtype=float)
    s = tab.s
    n = u.size
    f = system.vector_field
    scale = max(1.0, float(np.max(np.abs(u))))
    tol = FIXED_POINT_TOL * scale

    if tab.is_explicit:
        stages_f = np.zeros((s, n))
        for i in range(s):
            ui = u + dt * (tab.a[i, :i] @ stages_f[:i]) if i else u.copy()
            stages_f[i] = f(ui)
        new = u + dt * (tab.b @ stages_f)
        return StepReport(state=_check_finite(new), iterations=0)

    stages = np.tile(u, (s, 1))
    iters = 0
    converged = False
    for it in range(1, MAX_FIXED_POINT_ITERS + 1):
        stages_f = np.array([f(stages[i]) for i in range(s)])
        new_stages = u[None, :] + dt * (tab.a @ stages_f)
        inc = float(np.max(np.abs(new_stages - stages)))
        stages = new_stages
        iters = it
        if not np.all(np.isfinite(stages)):
            break
        if inc <= tol:
            converged = True
            break
        if it >= 8 and inc > scale:
            break  # clearly diverging, switch to Newton

    if not converged:
        stages = _irk_newton(system, u, dt, tab, tol)
        iters = MAX_FIXED_POINT_ITERS

    stages_f = np.array([f(stages[i]) for i in range(s)])
    residual = float(np.max(np.abs(stages - u[None, :] - dt * (tab.a @ stages_f))))
    new = u + dt * (tab.b @ stages_f)
    return StepReport(state=_check_finite(new), iterations=iters, residual=residual)


def _irk_newton(system, u, dt, tab, tol):
    """Chord Newton on the stacked stage equations, Jacobian frozen at u."""
    s = tab.s
    n = u.size
    f = system.vector_field
    df = fd_jacobian(f, u)
    m = np.eye(s * n) - dt * np.kron(tab.a, df)
    stages = np.tile(u, (s, 1))
    for _ in range(MAX_NEWTON_ITERS):
        stages_f = np.array([f(stages[i]) for i in range(s)])
        r = (stages - u[None, :] - dt * (tab.a @ stages_f)).ravel()
        if np.max(np.abs(r)) <= tol:
            return stages
        stages = stages - solve_dense(m.copy(), r).reshape(s, n)
    # chord iteration stalled; one refresh of the Jacobian at the stage mean
    df = fd_jacobian(f, stages.mean(axis=0))
    m = np.eye(s * n) - dt * np.kron(tab.a, df)
    for _ in range(MAX_NEWTON_ITERS):
        stages_f = np.array([f(stages[i]) for i in range(s)])
        r = (stages - u[None, :] - dt * (tab.a @ stages_f)).ravel()
        if np.max(np.abs(r)) <= tol:
            return stages
        stages = stages - solve_dense(m.copy(), r).reshape(s, n)
    raise StageSolveError("implicit Runge-Kutta stages did not converge")


def integrate(system, stepper, u0, dt, n_steps, record_stride=1):
    """Run a one-step integrator; returns (times, states) sampled at the stride."""
    u = np.asarray(u0, dtype=float).copy()
    times = [0.0]
    states = [u.copy()]
    for k in range(1, n_steps + 1):
        out = stepper(system, u, dt)
        u = getattr(out, "state", out)
        if k % record_stride == 0 or k == n_steps:
            times.append(k * dt)
            states.append(u.copy())
    return np.array(times), states


# ---------------------------------------------------------------------------
# Generic (non-Hamiltonian) ODE helpers, used for reference trajectories and
# for the adaptive RK4 comparison runs.

def rk4_ode_step(f, u, t, dt):
    """Classical RK4 step for u' = f(u, t) on real or complex arrays."""
    k1 = f(u, t)
    k2 = f(u + 0.5 * dt * k1, t + 0.5 * dt)
    k3 = f(u + 0.5 * dt * k2, t + 0.5 * dt)
    k4 = f(u + dt * k3, t + dt)
    return u + dt * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0


def integrate_rk4(f, u0, t0, t1, n_steps):
    """Fixed-step RK4 trajectory; returns the final state."""
    dt = (t1 - t0) / n_steps
    u = np.asarray(u0).copy()
    for k in range(n_steps):
        u = rk4_ode_step(f, u, t0 + k * dt, dt)
    return u


@dataclass
class AdaptiveRun:
    times: np.ndarray
    states: list
    steps: np.ndarray = field(default_factory=lambda: np.array([]))

    @property
    def mean_step(self):
        return float(np.mean(self.steps)) if self.steps.size else 0.0


def integrate_rk4_adaptive(f, u0, t_final, tol, t0=0.0, dt0=1e-3, record_stride=1,
                           max_steps=10_000_000):
    """Adaptive RK4 by step doubling.

    The local error is estimated by comparing one full step against two half
    steps (error ~ difference / 15); the step is accepted when the estimate
    is below tol * max(1, |u|) and resized with the usual 5th-root rule.
    """
    u = np.asarray(u0).copy()
    t = t0
    dt = dt0
    times = [t]
    states = [u.copy()]
    steps = []
    k = 0
    while t < t_final - 1e-14 and k < max_steps:
        dt = min(dt, t_final - t)
        big = rk4_ode_step(f, u, t, dt)
        half = rk4_ode_step(f, u, t, dt / 2.0)
        two = rk4_ode_step(f, half, t + dt / 2.0, dt / 2.0)
        err = float(np.max(np.abs(two - big))) / 15.0
        limit = tol * max(1.0, float(np.max(np.abs(u))))
        if err <= limit:
            u = two
            t += dt
            steps.append(dt)
            k += 1
            if k % record_stride == 0:
                times.append(t)
                states.append(u.copy())
        factor = 0.9 * (limit / err) ** 0.2 if err > 0 else 4.0
        dt *= min(4.0, max(0.1, factor))
    if times[-1] != t:
        times.append(t)
        states.append(u.copy())
    return AdaptiveRun(times=np.array(times), states=states, steps=np.array(steps))
