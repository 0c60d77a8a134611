# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernel: locus-function values on dense y grids."""

import numpy as np

from libc.math cimport M_PI, acos, fabs, sinh, sqrt


cdef inline double _locus_f(int n, int eps, double rho, double y) noexcept nogil:
    # Stable forms: s-1 = y^2/(s+1) and, for rho < 1,
    # 1 - (1-rho)s = rho*s - y^2/(s+1); avoids cancellation at small y.
    cdef double s = sqrt(y * y + 1.0)
    cdef double den = (1.0 - rho) * (1.0 - rho) * y * y + rho * rho
    cdef double num_a, term1, a, R, x, sh
    if rho < 1.0:
        num_a = rho * s - y * y / (s + 1.0)
        term1 = (1.0 - rho) * (s + 1.0) / den
    else:
        num_a = 1.0 - (rho - 1.0) * s
        term1 = (rho - 1.0) * y * y / ((s + 1.0) * den)
    a = num_a / sqrt(den)
    if a > 1.0:
        a = 1.0
    elif a < -1.0:
        a = -1.0
    R = M_PI * n + eps * acos(a)
    x = fabs(y) * R / (s + 1.0)
    if x > 350.0:
        return -1e300
    sh = sinh(x)
    return term1 - 0.5 * sh * sh


def f_scalar(int n, int eps, double rho, double y):
    return _locus_f(n, eps, rho, y)


def f_grid(int n, int eps, double rho, double[::1] ys):
    cdef Py_ssize_t i, N = ys.shape[0]
    out = np.empty(N)
    cdef double[::1] ov = out
    with nogil:
        for i in range(N):
            ov[i] = _locus_f(n, eps, rho, ys[i])
    return out
