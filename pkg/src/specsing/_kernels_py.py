"""Pure-python (numpy) fallback for the locus-function kernels.

Mirrors the semantics of the compiled extension exactly: same stable
algebraic forms, same arccos clamping, same overflow sentinel.
"""

import math

import numpy as np

_OVERFLOW = 350.0
_SENTINEL = -1e300


def f_scalar(n, eps, rho, y):
    s = math.sqrt(y * y + 1.0)
    den = (1.0 - rho) ** 2 * y * y + rho * rho
    if rho < 1.0:
        num_a = rho * s - y * y / (s + 1.0)
        term1 = (1.0 - rho) * (s + 1.0) / den
    else:
        num_a = 1.0 - (rho - 1.0) * s
        term1 = (rho - 1.0) * y * y / ((s + 1.0) * den)
    a = min(1.0, max(-1.0, num_a / math.sqrt(den)))
    R = math.pi * n + eps * math.acos(a)
    x = abs(y) * R / (s + 1.0)
    if x > _OVERFLOW:
        return _SENTINEL
    sh = math.sinh(x)
    return term1 - 0.5 * sh * sh


def f_grid(n, eps, rho, ys):
    ys = np.asarray(ys, dtype=float)
    s = np.sqrt(ys * ys + 1.0)
    den = (1.0 - rho) ** 2 * ys * ys + rho * rho
    if rho < 1.0:
        num_a = rho * s - ys * ys / (s + 1.0)
        term1 = (1.0 - rho) * (s + 1.0) / den
    else:
        num_a = 1.0 - (rho - 1.0) * s
        term1 = (rho - 1.0) * ys * ys / ((s + 1.0) * den)
    a = np.clip(num_a / np.sqrt(den), -1.0, 1.0)
    R = np.pi * n + eps * np.arccos(a)
    x = np.abs(ys) * R / (s + 1.0)
    safe = x <= _OVERFLOW
    out = np.full(ys.shape, _SENTINEL)
    sh = np.sinh(x[safe])
    out[safe] = term1[safe] - 0.5 * sh * sh
    return out
