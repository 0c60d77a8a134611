"""Reduction of the singularity condition to real transcendental equations.

Everything here lives in the dimensionless (rho, sigma) plane, the complex
z/k^2 plane.  With y = sigma/(1-rho), the condition m22 = 0 reduces to a
one-parameter family of real equations F(n, eps; rho, y) = 0 labeled by an
integer branch index n and a sign eps, and the product alpha*k at a solution
is fixed by G(n, eps; rho, y).  Candidate roots of F are certified by
evaluating the barrier residual on a concrete (k, alpha, z) realization;
only certified points are reported (eps = -, n >= 1, sigma > 0 survive).

Numerics note: the textbook expressions contain sqrt(y^2+1) - 1 and
1 - |1-rho|*sqrt(y^2+1), which cancel catastrophically for small y.  All
functions below use the identical stable rewrites s - 1 = y^2/(s+1) and
(for rho < 1) 1 - (1-rho)s = rho*s - y^2/(s+1).
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from . import kernels
from .barrier import BarrierSpec, m22_residual

__all__ = [
    "BranchLabel",
    "LocusPoint",
    "q_of",
    "r_of",
    "Q_of",
    "R_of",
    "G_of",
    "F_of",
    "solve_sigma",
    "trace_curve",
]

#: certification threshold on the barrier residual
RESIDUAL_TOL = 1e-9


@dataclass(frozen=True)
class BranchLabel:
    """Branch index n >= 0 and sign eps (+1 or -1); n = 0 forces eps = +1."""

    n: int
    eps: int

    def __post_init__(self):
        if self.eps not in (1, -1):
            raise ValueError(f"eps must be +1 or -1, got {self.eps}")
        if self.n < 0 or (self.n == 0 and self.eps != 1):
            raise ValueError(f"invalid branch (n={self.n}, eps={self.eps})")


@dataclass(frozen=True)
class LocusPoint:
    """Certified singularity point in the rho-sigma plane."""

    rho: float
    sigma: float
    y: float
    alpha_k: float
    branch: BranchLabel
    residual: float


def _pieces(rho, y):
    """(s, den, num_a, ar) with the cancellation-free numerator of the arccos."""
    s = math.sqrt(y * y + 1.0)
    ar = abs(1.0 - rho)
    den = (1.0 - rho) ** 2 * y * y + rho * rho
    if den == 0.0:
        raise ValueError("(rho, y) = (0, 0): real free case is excluded")
    if rho < 1.0:
        num_a = rho * s - y * y / (s + 1.0)
    else:
        num_a = 1.0 - (rho - 1.0) * s
    return s, den, num_a, ar


def q_of(rho, y, alpha_k):
    """alpha_k * sqrt(2|1-rho|(sqrt(y^2+1)-1)) * sgn(y); odd in y."""
    if rho == 1:
        raise ValueError("rho = 1")
    s = math.sqrt(y * y + 1.0)
    return alpha_k * math.sqrt(2.0 * abs(1.0 - rho) / (s + 1.0)) * y


def r_of(rho, y, alpha_k):
    """alpha_k * sqrt(2|1-rho|(sqrt(y^2+1)+1)); positive for alpha_k > 0."""
    if rho == 1:
        raise ValueError("rho = 1")
    s = math.sqrt(y * y + 1.0)
    return alpha_k * math.sqrt(2.0 * abs(1.0 - rho) * (s + 1.0))


def Q_of(rho, y):
    """asinh sqrt(2(sqrt(y^2+1)|1-rho| + 1 - rho) / ((1-rho)^2 y^2 + rho^2))."""
    s, den, _, _ = _pieces(rho, y)
    if rho < 1.0:
        num = (1.0 - rho) * (s + 1.0)
    else:
        num = (rho - 1.0) * y * y / (s + 1.0)
    return math.asinh(math.sqrt(2.0 * num / den))


def R_of(branch, rho, y):
    """pi*n + eps * arccos of the normalized offset; always real."""
    s, den, num_a, _ = _pieces(rho, y)
    a = num_a / math.sqrt(den)
    # analytically in [-1, 1]; rounding can push it out by ~1 ulp
    a = min(1.0, max(-1.0, a))
    return math.pi * branch.n + branch.eps * math.acos(a)


def G_of(branch, rho, y):
    """Value of alpha*k forced at a locus point: R / sqrt(2|1-rho|(s+1))."""
    s, _, _, ar = _pieces(rho, y)
    if rho == 1:
        raise ValueError("rho = 1")
    return R_of(branch, rho, y) / math.sqrt(2.0 * ar * (s + 1.0))


def F_of(branch, rho, y):
    """Locus function; zero exactly on the branch curve."""
    _pieces(rho, y)  # validates the degenerate cases
    return kernels.f_scalar(branch.n, branch.eps, rho, y)


def _certify(branch, rho, y, residual_tol):
    """Realize (k=1, alpha=G, z=rho+i sigma) and check the barrier residual."""
    sigma = (1.0 - rho) * y
    alpha_k = G_of(branch, rho, y)
    if alpha_k <= 0:
        return None
    res = m22_residual(BarrierSpec(alpha=alpha_k, z=complex(rho, sigma)), 1.0)
    if res >= residual_tol:
        return None
    return LocusPoint(rho=rho, sigma=sigma, y=y, alpha_k=alpha_k,
                      branch=branch, residual=res)


def solve_sigma(branch, rho, y_min=1e-6, y_max=1e6, points_per_decade=400,
                residual_tol=RESIDUAL_TOL):
    """All certified sigma > 0 singularity points above rho, sorted by sigma.

    Roots of F are bracketed on a geometric y grid and polished by Brent's
    method to relative 1e-14; each candidate is then certified against the
    barrier residual, which weeds out spurious zeros of F (including the
    double-precision noise roots in the far F -> 0 tails).
    """
    if not rho < 1:
        raise ValueError(f"rho must be < 1, got {rho}")
    ndec = math.log10(y_max / y_min)
    ys = np.geomspace(y_min, y_max, int(round(points_per_decade * ndec)) + 1)
    fv = kernels.f_grid(branch.n, branch.eps, rho, ys)
    sgn = np.sign(fv)
    roots = []
    for i in np.nonzero(sgn[:-1] * sgn[1:] < 0)[0]:
        y = brentq(lambda yy: kernels.f_scalar(branch.n, branch.eps, rho, yy),
                   ys[i], ys[i + 1], xtol=1e-300, rtol=1e-14)
        if roots and abs(y - roots[-1]) <= 1e-6 * abs(y):
            continue
        roots.append(y)
    for i in np.nonzero(fv == 0.0)[0]:
        y = ys[i]
        if not any(abs(y - r) <= 1e-6 * abs(y) for r in roots):
            roots.append(y)
    points = []
    for y in sorted(roots):
        pt = _certify(branch, rho, y, residual_tol)
        if pt is not None:
            points.append(pt)
    points.sort(key=lambda p: p.sigma)
    return points


def trace_curve(branch, rho_min, rho_max, samples, **solve_kwargs):
    """Sample the curve over [rho_min, rho_max], densified toward rho = 1.

    The rho grid is uniform in log(1 - rho).  Output is ordered by
    descending rho, then ascending sigma; empty rho slices are skipped.
    """
    if not (rho_min < rho_max < 1):
        raise ValueError(f"need rho_min < rho_max < 1, got [{rho_min}, {rho_max}]")
    if samples < 2:
        raise ValueError("samples must be >= 2")
    us = np.linspace(math.log(1.0 - rho_max), math.log(1.0 - rho_min), samples)
    points = []
    for u in us:
        points.extend(solve_sigma(branch, 1.0 - math.exp(u), **solve_kwargs))
    return points
