"""Gauss-Laguerre quadrature on [0, inf) with weight exp(-x)."""

from dataclasses import dataclass

import numpy as np

from .linalg import sym_eigh


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and weights of a quadrature rule for int_0^inf f(x) e^-x dx."""

    nodes: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        if np.any(np.diff(self.nodes) <= 0):
            raise ValueError("nodes must be strictly increasing")
        if np.any(self.weights <= 0):
            raise ValueError("weights must be positive")

    @property
    def count(self):
        return len(self.nodes)

    def integrate(self, f):
        return np.sum(self.weights * f(self.nodes))


def gauss_laguerre(n):
    """n-point Gauss-Laguerre rule via the Golub-Welsch tridiagonal eigenproblem.

    The Jacobi matrix for the Laguerre weight has diagonal 2k+1 and
    off-diagonal k; nodes are its eigenvalues and each weight is the squared
    first component of the corresponding eigenvector (the zeroth moment of
    e^-x being 1).  Exact for polynomials up to degree 2n-1.
    """
    if not 1 <= n <= 64:
        raise ValueError("node count must be in [1, 64]")
    jac = np.diag(2.0 * np.arange(n) + 1.0)
    k = np.arange(1, n, dtype=float)
    jac[np.arange(n - 1), np.arange(1, n)] = k
    jac[np.arange(1, n), np.arange(n - 1)] = k
    nodes, _ = sym_eigh(jac)
    # polish the eigenvalue estimates with Newton on L_n(x) = 0, then use the
    # classical weight formula; this buys several extra digits on high moments
    for _ in range(3):
        lnm1, ln, _ = _laguerre_triple(n, nodes)
        dln = n * (ln - lnm1) / nodes
        nodes = nodes - ln / dln
    _, _, lnp1 = _laguerre_triple(n, nodes)
    weights = nodes / ((n + 1.0) * lnp1) ** 2
    return QuadratureRule(nodes=nodes, weights=weights)


def _laguerre_triple(n, x):
    """(L_{n-1}, L_n, L_{n+1}) at x via the three-term recurrence."""
    lprev = np.ones_like(x)  # L_0
    lcur = 1.0 - x           # L_1
    if n == 0:
        return np.zeros_like(x), lprev, lcur
    for k in range(1, n):
        lprev, lcur = lcur, ((2.0 * k + 1.0 - x) * lcur - k * lprev) / (k + 1.0)
    lnext = ((2.0 * n + 1.0 - x) * lcur - n * lprev) / (n + 1.0)
    return lprev, lcur, lnext
