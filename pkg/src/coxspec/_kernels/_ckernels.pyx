# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled twins of the dense numeric kernels (see _pykernels for the
reference semantics): power iteration for the dominant eigenpair and the
cyclic Jacobi eigenvalue sweep."""

from libc.math cimport fabs, sqrt, copysign, INFINITY

import numpy as np


def power_iteration(object m_obj, double tol, long max_iter, double res_threshold):
    """Dominant eigenpair of a symmetric nonnegative matrix.

    Returns (mu, x, iterations, residual, converged); x has unit 2-norm.
    """
    m_arr = np.ascontiguousarray(m_obj, dtype=np.float64)
    cdef double[:, ::1] m = m_arr
    cdef Py_ssize_t n = m.shape[0]
    x_arr = np.full(n, 1.0 / sqrt(<double> n), dtype=np.float64)
    y_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] x = x_arr
    cdef double[::1] y = y_arr
    cdef double mu_prev = INFINITY
    cdef double mu = 0.0
    cdef double res = INFINITY
    cdef double acc, ynorm, diff
    cdef Py_ssize_t i, j
    cdef long it
    for it in range(1, max_iter + 1):
        mu = 0.0
        res = 0.0
        for i in range(n):
            acc = 0.0
            for j in range(n):
                acc += m[i, j] * x[j]
            y[i] = acc
            mu += x[i] * acc
        for i in range(n):
            diff = fabs(y[i] - mu * x[i])
            if diff > res:
                res = diff
        if fabs(mu - mu_prev) <= tol and res <= res_threshold:
            return mu, x_arr, it, res, True
        mu_prev = mu
        ynorm = 0.0
        for i in range(n):
            ynorm += y[i] * y[i]
        ynorm = sqrt(ynorm)
        if ynorm == 0.0:
            return mu, x_arr, it, res, False
        for i in range(n):
            x[i] = y[i] / ynorm
    return mu, x_arr, max_iter, res, False


def jacobi_eigenvalues(object a_obj, double tol, int max_sweeps):
    """All eigenvalues of a symmetric matrix by cyclic Jacobi rotations.

    Returns (values ascending, converged).
    """
    a_arr = np.array(a_obj, dtype=np.float64, copy=True, order="C")
    cdef double[:, ::1] a = a_arr
    cdef Py_ssize_t n = a.shape[0]
    if n <= 1:
        return np.diagonal(a_arr).copy(), True
    cdef bint rotated
    cdef Py_ssize_t p, q, k
    cdef int sweep
    cdef double apq, theta, t, c, s, akp, akq, off
    for sweep in range(max_sweeps):
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if fabs(apq) <= tol:
                    continue
                rotated = True
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = copysign(1.0, theta) / (fabs(theta) + sqrt(theta * theta + 1.0))
                c = 1.0 / sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    akp = a[p, k]
                    akq = a[q, k]
                    a[p, k] = c * akp - s * akq
                    a[q, k] = s * akp + c * akq
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * akq
                    a[k, q] = s * akp + c * akq
        if not rotated:
            return np.sort(np.diagonal(a_arr).copy()), True
    off = 0.0
    for p in range(n - 1):
        for q in range(p + 1, n):
            if fabs(a[p, q]) > off:
                off = fabs(a[p, q])
    return np.sort(np.diagonal(a_arr).copy()), off <= tol
