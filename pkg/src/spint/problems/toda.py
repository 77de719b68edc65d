"""Periodic Toda lattice: H = sum_k p_k^2/2 + exp(q_k - q_{k+1}), q_{d+1} = q_1.

The lattice is completely integrable; the eigenvalues of the tridiagonal-
plus-corners matrix built from a_k = -p_k/2 and b_k = exp((q_k - q_{k+1})/2)/2
are first integrals, which makes it the standard long-horizon stress test.
"""

import numpy as np

from ..hamiltonian import HamiltonianSystem
from ..linalg import sym_eigenvalues


def toda_hamiltonian(state):
    d = state.size // 2
    q, p = state[:d], state[d:]
    return 0.5 * float(p @ p) + float(np.sum(np.exp(q - np.roll(q, -1))))


def toda_grad(state):
    d = state.size // 2
    q, p = state[:d], state[d:]
    e = np.exp(q - np.roll(q, -1))
    return np.concatenate([e - np.roll(e, 1), p])


def _toda_taylor_rule(coeffs, t0):
    """Next Taylor coefficient via the auxiliary series E_k = exp(q_k - q_{k+1})."""
    n = len(coeffs) - 1
    d = coeffs[0].size // 2
    qs = np.array([c[:d] for c in coeffs])
    ps = np.array([c[d:] for c in coeffs])
    w = qs - np.roll(qs, -1, axis=1)
    e = np.empty_like(w)
    e[0] = np.exp(w[0])
    for m in range(n):
        acc = np.zeros(d, dtype=complex)
        for j in range(m + 1):
            acc += (j + 1) * w[j + 1] * e[m - j]
        e[m + 1] = acc / (m + 1)
    q_next = ps[n] / (n + 1)
    p_next = -(e[n] - np.roll(e[n], 1)) / (n + 1)
    return np.concatenate([q_next, p_next])


def toda_system(d=3):
    return HamiltonianSystem(d=d, hamiltonian=toda_hamiltonian, grad=toda_grad,
                             separable=True, taylor_rule=_toda_taylor_rule)


def toda_initial_state():
    """The reference initial data: q = (0, 2, 3), p = (0.5, -1.5, 1)."""
    return np.array([0.0, 2.0, 3.0, 0.5, -1.5, 1.0])


def lax_matrix(state):
    """Symmetric matrix whose spectrum is conserved along Toda trajectories."""
    d = state.size // 2
    q, p = state[:d], state[d:]
    a = -0.5 * p
    b = 0.5 * np.exp(0.5 * (q - np.roll(q, -1)))
    lax = np.diag(a)
    for k in range(d):
        lax[k, (k + 1) % d] += b[k]
        lax[(k + 1) % d, k] += b[k]
    return lax


def lax_eigenvalues(state):
    """Ascending eigenvalues of the Lax matrix (first integrals)."""
    return sym_eigenvalues(lax_matrix(state))
