"""Small dense linear-algebra kernels.

Everything here targets desk-scale matrices (at most a few hundred rows);
the algorithms are chosen for robustness and simplicity, not asymptotics.
"""

import math

import numpy as np

from .errors import (
    NoConvergenceError,
    NonFiniteEvaluationError,
    NotSymmetricError,
    SingularMatrixError,
)

_EPS = np.finfo(float).eps


def solve_dense(a, b):
    """Solve the dense system a @ x = b by LU with partial pivoting.

    Works for real or complex entries and for one or several right-hand
    sides.  Raises SingularMatrixError when a pivot falls below
    1e-14 * max|a|.
    """
    a = np.array(a, dtype=np.result_type(np.asarray(a), float))
    b = np.asarray(b, dtype=np.result_type(np.asarray(b), a.dtype))
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("matrix must be square")
    threshold = 1e-14 * max(np.max(np.abs(a)), 1e-300)
    x = b.astype(np.result_type(a.dtype, b.dtype), copy=True)
    one_dim = x.ndim == 1
    if one_dim:
        x = x[:, None]
    for k in range(n):
        piv = k + int(np.argmax(np.abs(a[k:, k])))
        if np.abs(a[piv, k]) <= threshold:
            raise SingularMatrixError(f"pivot {np.abs(a[piv, k]):.3e} at column {k}")
        if piv != k:
            a[[k, piv]] = a[[piv, k]]
            x[[k, piv]] = x[[piv, k]]
        factors = a[k + 1:, k] / a[k, k]
        a[k + 1:, k + 1:] -= np.outer(factors, a[k, k + 1:])
        x[k + 1:] -= np.outer(factors, x[k])
    for k in range(n - 1, -1, -1):
        x[k] = (x[k] - a[k, k + 1:] @ x[k + 1:]) / a[k, k]
    return x[:, 0] if one_dim else x


def _check_symmetric(a, rtol=1e-12):
    scale = max(np.max(np.abs(a)), 1e-300)
    defect = np.max(np.abs(a - a.T))
    if defect > rtol * scale:
        raise NotSymmetricError(f"symmetry defect {defect:.3e} (scale {scale:.3e})")


def sym_eigh(a, max_sweeps=100):
    """Eigen-decomposition of a real symmetric matrix by cyclic Jacobi sweeps.

    Returns (eigenvalues ascending, eigenvectors as columns).  Sweeps stop
    once the off-diagonal Frobenius norm drops below 1e-13 * ||a||_F.
    """
    a = np.array(a, dtype=float)
    _check_symmetric(a)
    n = a.shape[0]
    v = np.eye(n)
    norm = max(np.linalg.norm(a), 1e-300)
    for _ in range(max_sweeps):
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off <= 1e-13 * norm:
            order = np.argsort(np.diag(a))
            return np.diag(a)[order].copy(), v[:, order].copy()
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-18 * norm:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                # smaller-magnitude root of t^2 - 2*theta*t - 1 = 0
                t = -np.sign(theta) / (abs(theta) + np.hypot(1.0, theta)) if theta != 0 else 1.0
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                rot = np.array([[c, s], [-s, c]])
                a[[p, q], :] = rot @ a[[p, q], :]
                a[:, [p, q]] = a[:, [p, q]] @ rot.T
                v[:, [p, q]] = v[:, [p, q]] @ rot.T
    raise NoConvergenceError(f"Jacobi eigenvalue sweep did not converge in {max_sweeps} sweeps")


def sym_eigenvalues(a, max_sweeps=100):
    """Sorted (ascending) eigenvalues of a real symmetric matrix."""
    vals, _ = sym_eigh(a, max_sweeps=max_sweeps)
    return vals


def _orthonormal_complete(u_cols, m):
    """Extend a list of orthonormal m-vectors to a full orthonormal basis."""
    basis = list(u_cols)
    for k in range(m):
        if len(basis) == m:
            break
        cand = np.zeros(m, dtype=basis[0].dtype if basis else float)
        cand[k] = 1.0
        for b in basis:
            cand = cand - b * np.vdot(b, cand)
        norm = np.linalg.norm(cand)
        if norm > 1e-8:
            basis.append(cand / norm)
    return basis


def _jacobi_orthogonalize(work, v, tiny, max_sweeps):
    """One-sided Jacobi sweeps on the rows of `work` (= columns of A).

    Rotates pairs of rows until all are mutually orthogonal (relative inner
    product below 1e-15), accumulating the same rotations in `v`.  The rows
    are handled as plain Python lists of scalars: matrices here are tiny
    (Pade/Hankel fits are at most ~10 x 10), where interpreter-level scalar
    arithmetic beats NumPy's per-call dispatch by an order of magnitude.
    """
    n = work.shape[0]
    wrows = work.tolist()
    vrows = v.tolist()
    for sweep in range(max_sweeps):
        rotated = False
        # squared column norms, kept current inside the sweep by the
        # standard Jacobi updates alpha -= t*g, beta += t*g
        colsq = [sum((x * x.conjugate()).real for x in row) for row in wrows]
        for p in range(n - 1):
            wp = wrows[p]
            vp = vrows[p]
            for q in range(p + 1, n):
                alpha = colsq[p]
                beta = colsq[q]
                if alpha <= tiny or beta <= tiny:
                    continue
                wq = wrows[q]
                gamma = sum(x.conjugate() * y for x, y in zip(wp, wq))
                g = abs(gamma)
                if g <= 1e-15 * math.sqrt(alpha * beta):
                    continue
                rotated = True
                vq = vrows[q]
                # absorb the phase (a sign, for real input) so the pair
                # reduces to a real Jacobi rotation
                phase = (gamma / g).conjugate()
                if phase != 1.0:
                    wq = [x * phase for x in wq]
                    vq = [x * phase for x in vq]
                tau = (beta - alpha) / (2.0 * g)
                # smaller-magnitude root of t^2 + 2*tau*t - 1 = 0
                t = math.copysign(1.0, tau) / (abs(tau) + math.hypot(1.0, tau)) if tau != 0 else 1.0
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = c * t
                wrows[q] = [s * x + c * y for x, y in zip(wp, wq)]
                wrows[p] = wp = [c * x - s * y for x, y in zip(wp, wq)]
                vrows[q] = [s * x + c * y for x, y in zip(vp, vq)]
                vrows[p] = vp = [c * x - s * y for x, y in zip(vp, vq)]
                colsq[p] = alpha - t * g
                colsq[q] = beta + t * g
        if not rotated:
            return np.array(wrows, dtype=work.dtype), np.array(vrows, dtype=v.dtype)
    raise NoConvergenceError(f"one-sided Jacobi SVD did not converge in {max_sweeps} sweeps")


def svd_small(a, max_sweeps=60):
    """Singular value decomposition of a small dense matrix.

    One-sided Jacobi: columns of `a` are orthogonalized by two-column
    rotations; the accumulated rotations give V.  Handles real and complex
    input.  Returns (u, s, v) with a = u[:, :k] @ diag(s) @ v[:, :k].conj().T,
    s descending, u (m x m) and v (n x n) unitary.
    """
    a = np.array(a, dtype=np.result_type(np.asarray(a), float))
    m, n = a.shape
    if max(m, n) > 64:
        raise ValueError("svd_small is restricted to matrices of size <= 64")
    complex_in = np.iscomplexobj(a)
    # store columns as contiguous rows of the transposed arrays; the inner
    # loop is all two-row operations, which are much cheaper on rows
    work = np.ascontiguousarray(a.T.astype(complex if complex_in else float))
    v = np.eye(n, dtype=work.dtype)
    scale = max(np.linalg.norm(work), 1e-300)
    tiny = (_EPS * scale) ** 2
    work, v = _jacobi_orthogonalize(work, v, tiny, max_sweeps)
    norms = np.linalg.norm(work, axis=1)
    order = np.argsort(-norms)
    work = work[order]
    v = v[order]
    norms = norms[order]
    k = min(m, n)
    s = norms[:k].copy()
    u_cols = [work[i] / norms[i] for i in range(k) if norms[i] > _EPS * scale * max(m, n)]
    u = np.column_stack(_orthonormal_complete(u_cols, m))
    if not complex_in:
        u = u.real
    return u, s, np.ascontiguousarray(v.T)


def fd_jacobian(f, x, h=None):
    """Central-difference Jacobian of a vector function at x.

    Entry (i, j) approximates d f_i / d x_j with O(h^2) accuracy.  The
    default step is eps^(1/3) * max(1, ||x||_inf), the usual central
    difference optimum.
    """
    x = np.asarray(x, dtype=float)
    if h is None:
        h = _EPS ** (1.0 / 3.0) * max(1.0, np.max(np.abs(x)) if x.size else 1.0)
    cols = []
    for j in range(x.size):
        e = np.zeros_like(x)
        e[j] = h
        fp = np.asarray(f(x + e), dtype=float)
        fm = np.asarray(f(x - e), dtype=float)
        if not (np.all(np.isfinite(fp)) and np.all(np.isfinite(fm))):
            raise NonFiniteEvaluationError(f"non-finite evaluation while differencing column {j}")
        cols.append((fp - fm) / (2.0 * h))
    return np.column_stack(cols)
