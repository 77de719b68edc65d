"""Borel-Pade-Laplace (BPL) resummation integrator.

Pipeline per step, starting from the state u0 at time t0:

1. Taylor coefficients u_0..u_N of the solution by the problem's recurrence.
2. Borel transform: coefficient n becomes u_{n+1} / n!.
3. Rational (Pade) fit of the transform, componentwise, with an SVD-based
   null-space solve and automatic denominator-degree reduction.
4. Borel sum along the positive real semi-line by Gauss-Laguerre quadrature:
   S(t) = u0 + t * sum_k w_k P(t x_k)   (substitution xi = t s makes the
   Laguerre weight exact).
5. The step t1 - t0 is the largest window on which the equation residual
   ||dS/dt - F(S, t)|| stays below eps_res; restart from S(t1).
"""

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import (
    DegenerateFitError,
    NonFiniteCoefficientError,
    PoleOnPathError,
    StepCollapseError,
)
from .hamiltonian import j_matrix
from .linalg import fd_jacobian, svd_small
from .quadrature import QuadratureRule, gauss_laguerre


@dataclass(frozen=True)
class TaylorGenerator:
    """A problem in Taylor-recurrence form.

    rule(coeffs, t0) returns the next Taylor coefficient of the solution
    given the list of coefficients computed so far (coeffs[0] is the state);
    rhs(u, t) evaluates the vector field, used for the step residual.
    """

    dim: int
    rule: Callable
    rhs: Callable


@dataclass(frozen=True)
class TaylorSeries:
    """Truncated time series: coeffs[n] is the order-n coefficient vector."""

    coeffs: np.ndarray  # (order+1, dim), complex
    t0: float = 0.0

    @property
    def order(self):
        return self.coeffs.shape[0] - 1


def generate_series(gen, u0, t0, order):
    """Taylor coefficients u_0..u_order from the generator's recurrence."""
    if order < 1:
        raise ValueError("series order must be >= 1")
    coeffs = [np.asarray(u0, dtype=complex)]
    for _ in range(order):
        nxt = np.asarray(gen.rule(coeffs, t0), dtype=complex)
        if not np.all(np.isfinite(nxt)):
            raise NonFiniteCoefficientError(f"coefficient {len(coeffs)} is not finite")
        coeffs.append(nxt)
    return TaylorSeries(coeffs=np.array(coeffs), t0=t0)


def borel_transform(series):
    """Term-by-term division by n!: output coefficient n is u_{n+1} / n!.

    The constant term u_0 is dropped here and re-added when the Laplace
    integral is evaluated.
    """
    if series.order < 1:
        raise ValueError("need at least order 1 to Borel-transform")
    shifted = series.coeffs[1:]
    factorials = np.cumprod(np.concatenate([[1.0], np.arange(1.0, shifted.shape[0])]))
    return TaylorSeries(coeffs=shifted / factorials[:, None], t0=series.t0)


@dataclass(frozen=True)
class RationalApproximant:
    """num/den polynomial pair, coefficients ascending, den[0] == 1."""

    num: np.ndarray
    den: np.ndarray

    def value(self, x):
        return _polyval(self.num, x) / _polyval(self.den, x)

    def derivative(self, x):
        n, d = _polyval(self.num, x), _polyval(self.den, x)
        dn, dd = _polyval(_polyder(self.num), x), _polyval(_polyder(self.den), x)
        return (dn * d - n * dd) / (d * d)


def _polyval(coeffs, x):
    """Horner evaluation of ascending coefficients at scalar or array x."""
    result = np.zeros_like(np.asarray(x, dtype=complex))
    for c in coeffs[::-1]:
        result = result * x + c
    return result


def _polyder(coeffs):
    if len(coeffs) <= 1:
        return np.zeros(1, dtype=complex)
    return coeffs[1:] * np.arange(1, len(coeffs))


def pade_fit(coeffs, n_num, n_den, svd_cutoff=1e-12):
    """Rational fit matching the Maclaurin series through order n_num + n_den.

    The denominator is the null-space vector of the Hankel-type system
    sum_j b_j c_{k-j} = 0 (k = n_num+1 .. n_num+n_den), taken from the SVD.
    A singular-value collapse below svd_cutoff * sigma_max signals a
    degenerate (lower-degree) rational function: the denominator degree is
    reduced by one and the fit repeated.

    The fit is preconditioned by working in the scaled variable sigma * xi,
    with sigma the growth rate max |c_n|^(1/n): fast-growing series (small
    convergence radius) would otherwise feed the Hankel SVD a matrix with
    tens of decades of dynamic range, and the resulting junk null vector
    plants spurious poles near the origin.
    """
    c = np.asarray(coeffs, dtype=complex)
    if n_num + n_den > len(c) - 1:
        raise ValueError("not enough series coefficients for the requested degrees")
    if not np.any(c.imag):
        # real series: fit in real arithmetic, roughly halving the SVD cost
        c = c.real
    mags = np.abs(c[1:])
    nz = np.nonzero(mags)[0] + 1
    sigma = float(np.max(np.abs(c[nz]) ** (1.0 / nz))) if nz.size else 1.0
    if not np.isfinite(sigma) or sigma <= 0.0:
        sigma = 1.0
    unit = _pade_fit_unit(c / sigma ** np.arange(len(c)), n_num, n_den, svd_cutoff)
    return RationalApproximant(
        num=unit.num * sigma ** np.arange(len(unit.num)),
        den=unit.den * sigma ** np.arange(len(unit.den)))


def _pade_fit_unit(c, n_num, n_den, svd_cutoff):

    def c_at(k):
        return c[k] if 0 <= k < len(c) else 0.0

    for nd in range(n_den, -1, -1):
        if nd == 0:
            return RationalApproximant(num=c[:n_num + 1].copy(), den=np.ones(1, dtype=complex))
        rows = np.array([[c_at(k - j) for j in range(nd + 1)]
                         for k in range(n_num + 1, n_num + nd + 1)])
        _, sing, v = svd_small(rows)
        if sing[0] <= 1e-14 * max(np.max(np.abs(c)), 1e-300):
            # the matched tail is numerically zero: plain polynomial
            return RationalApproximant(num=c[:n_num + 1].copy(), den=np.ones(1, dtype=complex))
        if sing[-1] < svd_cutoff * sing[0]:
            continue  # rank deficient: drop one denominator degree
        b = v[:, -1]
        if abs(b[0]) < 1e-10 * np.linalg.norm(b):
            continue  # denominator would vanish at the origin
        b = b / b[0]
        num = np.array([sum(b[j] * c_at(k - j) for j in range(min(k, nd) + 1))
                        for k in range(n_num + 1)])
        return RationalApproximant(num=num, den=b)
    raise DegenerateFitError("no admissible Pade denominator degree")


def pade_poles(approx):
    """Denominator roots via the companion matrix; empty for a constant
    denominator (trailing coefficients below 1e-300 are dropped first)."""
    den = np.asarray(approx.den)
    keep = len(den)
    while keep > 1 and abs(den[keep - 1]) <= 1e-300:
        keep -= 1
    if keep == 1:
        return np.zeros(0, dtype=complex)
    return np.roots(den[:keep][::-1])


def pole_guard(approx):
    """Distance from the denominator roots to the positive real semi-line."""
    roots = pade_poles(approx)
    if roots.size == 0:
        return np.inf
    dist = np.where(roots.real >= 0.0, np.abs(roots.imag), np.abs(roots))
    return float(np.min(dist))


def check_laplace_path(roots, t, rule, rel_tol=1e-3):
    """Reject evaluation when a pole sits within relative distance rel_tol of
    a scaled quadrature node t x_k (the integrand would be sampled on top of
    the pole); poles elsewhere are harmless for the quadrature sum."""
    if roots.size == 0:
        return
    xi = t * rule.nodes
    dist = np.min(np.abs(roots[:, None] - xi[None, :]), axis=0)
    bad = dist <= rel_tol * xi
    if np.any(bad):
        k = int(np.argmax(bad))
        raise PoleOnPathError(
            f"pole within {dist[k]:.3e} of quadrature node {xi[k]:.3e}")


def laplace_eval(approx, u0_component, t, rule):
    """Borel sum u0 + t * sum_k w_k P(t x_k) at time offset t > 0."""
    check_laplace_path(pade_poles(approx), t, rule)
    return u0_component + t * np.sum(rule.weights * approx.value(t * rule.nodes))


class BorelSum:
    """Componentwise Borel sum of a step's series, evaluable with derivative.

    Stores the per-component Pade approximants stacked into coefficient
    matrices so evaluation at the quadrature nodes vectorizes over the state.
    """

    def __init__(self, approximants, u0, rule, t0=0.0):
        self.approximants = approximants
        self.u0 = np.asarray(u0, dtype=complex)
        self.rule = rule
        self.t0 = t0
        max_num = max(len(a.num) for a in approximants)
        max_den = max(len(a.den) for a in approximants)
        self._num = np.zeros((len(approximants), max_num), dtype=complex)
        self._den = np.zeros((len(approximants), max_den), dtype=complex)
        for i, a in enumerate(approximants):
            self._num[i, :len(a.num)] = a.num
            self._den[i, :len(a.den)] = a.den
        self._dnum = _polyder_stack(self._num)
        self._dden = _polyder_stack(self._den)
        self.poles = (np.concatenate([pade_poles(a) for a in approximants])
                      if approximants else np.zeros(0, dtype=complex))
        self.min_pole_distance = min(pole_guard(a) for a in approximants)

    def _check_path(self, t):
        check_laplace_path(self.poles, t, self.rule)

    def _p_at_nodes(self, t):
        x = t * self.rule.nodes
        return _polyval_stack(self._num, x) / _polyval_stack(self._den, x)

    def value(self, t):
        """State at local time t (t = 0 returns u0 exactly)."""
        if t == 0.0:
            return self.u0.copy()
        self._check_path(t)
        return self.u0 + t * (self._p_at_nodes(t) @ self.rule.weights)

    def derivative(self, t):
        """Closed-form dS/dt = sum_k w_k [P(t x_k) + t x_k P'(t x_k)]."""
        self._check_path(t)
        x = t * self.rule.nodes
        num, den = _polyval_stack(self._num, x), _polyval_stack(self._den, x)
        dnum, dden = _polyval_stack(self._dnum, x), _polyval_stack(self._dden, x)
        p = num / den
        dp = (dnum * den - num * dden) / (den * den)
        return (p + x[None, :] * dp) @ self.rule.weights


def _polyval_stack(coeffs, x):
    """Horner on a (dim, degree+1) ascending-coefficient stack at nodes x."""
    result = np.zeros((coeffs.shape[0], len(x)), dtype=complex)
    for k in range(coeffs.shape[1] - 1, -1, -1):
        result = result * x[None, :] + coeffs[:, k:k + 1]
    return result


def _polyder_stack(coeffs):
    if coeffs.shape[1] <= 1:
        return np.zeros((coeffs.shape[0], 1), dtype=complex)
    return coeffs[:, 1:] * np.arange(1, coeffs.shape[1])[None, :]


def residual(gen, borel_sum, t):
    """Equation residual ||dS/dt - F(S(t), t0 + t)||_inf of the resummed solution."""
    s = borel_sum.value(t)
    ds = borel_sum.derivative(t)
    return float(np.max(np.abs(ds - np.asarray(gen.rhs(s, borel_sum.t0 + t), dtype=complex))))


@dataclass
class BplConfig:
    """Tuning of the BPL integrator.

    Defaults follow the standard operating point: series order 10, Pade
    degrees (4, 5), 20 quadrature nodes.  When the degrees are left None
    they are derived from the order as ((order-1)//2, order//2) so all Borel
    coefficients are matched.
    """

    eps_res: float = 1e-8
    order: int = 10
    n_num: Optional[int] = None
    n_den: Optional[int] = None
    quad_nodes: int = 20
    growth: float = 2.0
    min_step: float = 1e-6
    max_step: float = 1e3
    max_trials: int = 40

    def __post_init__(self):
        if self.n_num is None:
            self.n_num = (self.order - 1) // 2
        if self.n_den is None:
            self.n_den = self.order // 2
        if self.n_num + self.n_den + 1 > self.order + 1:
            raise ValueError("Pade degrees exceed the available Borel coefficients")
        if self.eps_res < 0:
            raise ValueError("eps_res must be nonnegative")
        if not (0 < self.min_step <= self.max_step):
            raise ValueError("need 0 < min_step <= max_step")


def build_borel_sum(gen, u0, t0, cfg, rule=None):
    """Steps 1-4 of the pipeline: series, Borel transform, Pade, quadrature."""
    rule = rule or gauss_laguerre(cfg.quad_nodes)
    series = generate_series(gen, u0, t0, cfg.order)
    bor = borel_transform(series)
    approximants = [pade_fit(bor.coeffs[:, i], cfg.n_num, cfg.n_den)
                    for i in range(gen.dim)]
    return BorelSum(approximants, series.coeffs[0], rule, t0=t0)


def bpl_step(gen, u0, t0, cfg, prev_step=None, h_cap=None, rule=None):
    """One adaptive BPL step.

    The accepted window is found by doubling from the previously accepted
    step (halving on rejection); a candidate h is accepted when the residual
    at h and at h/2 both stay below eps_res and no Pade pole obstructs the
    Laplace path.  Returns (t1, u(t1), diagnostics).
    """
    bsum = build_borel_sum(gen, u0, t0, cfg, rule=rule)
    cap = cfg.max_step if h_cap is None else min(h_cap, cfg.max_step)
    # the acceptance test is relative to the vector-field magnitude at the
    # expansion point, so growing solutions do not strangle the step
    scale = max(1.0, float(np.max(np.abs(gen.rhs(u0, t0)))))
    diagnostics = {"trials": 0, "pole_rejections": 0, "residual": np.nan,
                   "probe_offsets": (1.0, 0.5)}

    def admissible(h):
        diagnostics["trials"] += 1
        try:
            r_end = residual(gen, bsum, h)
            r_mid = residual(gen, bsum, 0.5 * h)
        except PoleOnPathError:
            diagnostics["pole_rejections"] += 1
            return False, np.inf
        r = max(r_end, r_mid) / scale
        return r <= cfg.eps_res, r

    h = min(prev_step if prev_step else cfg.min_step, cap)
    h = max(h, min(cfg.min_step, cap))
    ok, r = admissible(h)
    if ok:
        while diagnostics["trials"] < cfg.max_trials and h < cap:
            h_next = min(cfg.growth * h, cap)
            ok_next, r_next = admissible(h_next)
            if not ok_next:
                break
            h, r = h_next, r_next
    else:
        while diagnostics["trials"] < cfg.max_trials:
            h /= cfg.growth
            if h < cfg.min_step * (1.0 - 1e-12):
                raise StepCollapseError(
                    f"step fell below min_step with residual {r:.3e} > eps_res {cfg.eps_res:.3e}")
            ok, r = admissible(h)
            if ok:
                break
        if not ok:
            raise StepCollapseError("trial budget exhausted above eps_res")
    diagnostics["residual"] = r
    diagnostics["step"] = h
    return t0 + h, bsum.value(h), diagnostics


@dataclass
class BplTrajectory:
    times: np.ndarray
    states: list
    steps: np.ndarray
    residuals: np.ndarray

    @property
    def mean_step(self):
        return float(np.mean(self.steps)) if self.steps.size else 0.0


def bpl_integrate(gen, u0, t_final, cfg, t0=0.0):
    """Chain BPL steps from t0 to t_final, recording every accepted step."""
    if t_final <= t0:
        raise ValueError("t_final must exceed t0")
    rule = gauss_laguerre(cfg.quad_nodes)
    t = t0
    u = np.asarray(u0, dtype=complex)
    times, states, steps, residuals = [t], [u.copy()], [], []
    prev = None
    while t < t_final - 1e-12 * max(1.0, abs(t_final)):
        t, u, diag = bpl_step(gen, u, t, cfg, prev_step=prev, h_cap=t_final - t, rule=rule)
        prev = diag["step"]
        times.append(t)
        states.append(u.copy())
        steps.append(diag["step"])
        residuals.append(diag["residual"])
    return BplTrajectory(times=np.array(times), states=states,
                         steps=np.array(steps), residuals=np.array(residuals))


def series_symplectic_defect(system, u, order, t):
    """Symplecticity defect of the truncated-series map (no resummation).

    The map u0 -> sum_{n<=order} t^n u_n(u0) uses the system's Taylor
    recurrence; its Jacobian is finite-differenced and tested against J.
    Theory predicts a defect of size O(t^(order+1)) inside the convergence
    disc.
    """
    if system.taylor_rule is None:
        raise ValueError("system has no Taylor recurrence")
    u = np.asarray(u, dtype=float)
    gen = TaylorGenerator(dim=u.size, rule=system.taylor_rule, rhs=lambda x, _t: x)

    def series_map(x):
        series = generate_series(gen, x.astype(complex), 0.0, order)
        powers = t ** np.arange(order + 1)
        return np.real(powers @ series.coeffs)

    g = fd_jacobian(series_map, u)
    j = j_matrix(u.size // 2)
    return float(np.linalg.norm(g.T @ j @ g - j))
