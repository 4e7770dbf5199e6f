"""NumPy implementations of the dense numeric kernels.

Selected at import time when the compiled extension is unavailable or when
COXSPEC_PURE_PYTHON is set.  Semantics match coxspec._kernels._ckernels;
only speed differs (see benchmarks/bench_kernels.py).
"""

import math

import numpy as np


def power_iteration(m, tol, max_iter, res_threshold):
    """Dominant eigenpair of a symmetric nonnegative matrix.

    Starts from the normalized all-ones vector (positive overlap with the
    Perron vector of an irreducible nonnegative matrix) and accepts once the
    Rayleigh quotient moves by at most ``tol`` between iterations while the
    infinity-norm residual |m x - mu x| is at most ``res_threshold``.

    Returns (mu, x, iterations, residual, converged); x has unit 2-norm.
    """
    m = np.asarray(m, dtype=float)
    n = m.shape[0]
    x = np.full(n, 1.0 / math.sqrt(n))
    mu_prev = math.inf
    mu = 0.0
    res = math.inf
    for it in range(1, max_iter + 1):
        y = m @ x
        mu = float(x @ y)
        res = float(np.max(np.abs(y - mu * x)))
        if abs(mu - mu_prev) <= tol and res <= res_threshold:
            return mu, x, it, res, True
        mu_prev = mu
        ynorm = float(np.linalg.norm(y))
        if ynorm == 0.0:
            return mu, x, it, res, False
        x = y / ynorm
    return mu, x, max_iter, res, False


def jacobi_eigenvalues(a, tol, max_sweeps):
    """All eigenvalues of a symmetric matrix by cyclic Jacobi rotations.

    Sweeps rows in order, rotating away every off-diagonal entry larger in
    magnitude than ``tol``; stops after a sweep that performed no rotation.

    Returns (values ascending, converged).
    """
    a = np.array(a, dtype=float, copy=True)
    n = a.shape[0]
    if n <= 1:
        return np.diagonal(a).copy(), True
    for _ in range(max_sweeps):
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= tol:
                    continue
                rotated = True
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (
                    abs(theta) + math.sqrt(theta * theta + 1.0)
                )
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
        if not rotated:
            return np.sort(np.diagonal(a).copy()), True
    off = a - np.diag(np.diagonal(a))
    return np.sort(np.diagonal(a).copy()), bool(np.max(np.abs(off)) <= tol)
