"""Transfer matrix and scattering amplitudes of the complex barrier potential.

The potential is v(x) = z for |x| < alpha and 0 elsewhere, with a complex
coupling z.  The closed-form transfer matrix is expressed through
w = sqrt(1 - z/k^2) taken on the upper-half-plane branch; a spectral
singularity is a real k at which the m22 entry vanishes, making the
reflection and transmission coefficients blow up.

`oracle_transfer_matrix` re-derives the matrix by brute-force plane-wave
matching (a 4x4 linear solve per basis column) and is kept deliberately
independent of the closed form for cross-validation.
"""

import cmath
from dataclasses import dataclass

import numpy as np

from .constants import principal_sqrt_upper

__all__ = [
    "BarrierSpec",
    "TransferMatrix",
    "ScatteringAmplitudes",
    "ReducedVariables",
    "SpectralSingularityError",
    "NumericalDegeneracyError",
    "f_func",
    "transfer_matrix",
    "amplitudes",
    "m22_residual",
    "oracle_transfer_matrix",
    "wavefunction_profile",
]


class SpectralSingularityError(ArithmeticError):
    """Raised when amplitudes are requested exactly at a zero of m22."""


class NumericalDegeneracyError(ArithmeticError):
    """Raised when a plane-wave matching system is numerically singular."""


@dataclass(frozen=True)
class BarrierSpec:
    """Barrier half-length alpha (nm) and complex coupling z (nm^-2)."""

    alpha: float
    z: complex

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")


@dataclass(frozen=True)
class TransferMatrix:
    m11: complex
    m12: complex
    m21: complex
    m22: complex

    @property
    def det(self):
        return self.m11 * self.m22 - self.m12 * self.m21

    def as_array(self):
        return np.array([[self.m11, self.m12], [self.m21, self.m22]])


@dataclass(frozen=True)
class ScatteringAmplitudes:
    t: complex
    r_left: complex
    r_right: complex


@dataclass(frozen=True)
class ReducedVariables:
    """Dimensionless reduction of (z, alpha, k): w, rho, sigma, y, q, r."""

    w: complex
    rho: float
    sigma: float
    y: float
    q: float
    r: float


def f_func(w, chi):
    """e^{-2i chi w}(1+w)^2 - e^{2i chi w}(1-w)^2; zero iff m22 is zero."""
    w = complex(w)
    return (cmath.exp(-2j * chi * w) * (1 + w) ** 2
            - cmath.exp(2j * chi * w) * (1 - w) ** 2)


def _csinc(x):
    """sin(x)/x for complex x, stable at x ~ 0."""
    if abs(x) < 1e-4:
        x2 = x * x
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0
    return cmath.sin(x) / x


def transfer_matrix(spec, k):
    """Closed-form transfer matrix of the barrier at wave number k (nm^-1).

    The entries are evaluated through sin(2 chi w)/(2w) = chi * sinc(2 chi w),
    which removes the w = 0 (z = k^2) removable singularity without a branch
    switch; the analytic limits m11 -> e^{-2i chi}(1 + i chi),
    m22 -> e^{2i chi}(1 - i chi), m12 -> -i chi come out automatically.
    """
    if not k > 0:
        raise ValueError(f"k must be positive, got {k}")
    chi = spec.alpha * k
    w = principal_sqrt_upper(1 - spec.z / k**2)
    c = cmath.cos(2 * chi * w)
    # sin(2 chi w) / (2 w) without dividing by w
    sr = chi * _csinc(2 * chi * w)
    m11 = cmath.exp(-2j * chi) * (c + 1j * (1 + w * w) * sr)
    m22 = cmath.exp(2j * chi) * (c - 1j * (1 + w * w) * sr)
    m12 = 1j * (w * w - 1) * sr
    return TransferMatrix(m11=m11, m12=m12, m21=-m12, m22=m22)


def amplitudes(m):
    """Transmission and reflection amplitudes t = 1/m22, r = -m21/m22, m12/m22."""
    if m.m22 == 0:
        raise SpectralSingularityError("m22 = 0: amplitudes are infinite")
    return ScatteringAmplitudes(
        t=1 / m.m22,
        r_left=-m.m21 / m.m22,
        r_right=m.m12 / m.m22,
    )


def m22_residual(spec, k):
    """Scale-free singularity residual |f(w, alpha k)| / (|1+w|^2 + |1-w|^2).

    Values below ~1e-9 certify a spectral singularity at working precision.
    The metric degenerates at the removable point z = k^2 (w = 0), where f
    vanishes identically while m22 stays finite; callers stay away from it.
    """
    if not k > 0:
        raise ValueError(f"k must be positive, got {k}")
    w = principal_sqrt_upper(1 - spec.z / k**2)
    f = f_func(w, spec.alpha * k)
    return abs(f) / (abs(1 + w) ** 2 + abs(1 - w) ** 2)


def oracle_transfer_matrix(spec, k):
    """Transfer matrix by direct plane-wave matching; independent oracle.

    For each prescribed left-side coefficient pair (1,0), (0,1) the interior
    solution C e^{i k w x} + D e^{-i k w x} is matched (value and derivative)
    at x = -alpha and x = +alpha and the right-side pair is read off; the two
    results form the matrix columns.  Uses numpy's standard sqrt branch: the
    interior basis only spans the same space, so the result is branch-free.
    """
    if not k > 0:
        raise ValueError(f"k must be positive, got {k}")
    a = spec.alpha
    w = np.sqrt(complex(1 - spec.z / k**2))
    if w == 0:
        raise NumericalDegeneracyError("degenerate interior (z = k^2)")
    ep = np.exp(1j * k * a)          # e^{+ika}
    em = np.exp(-1j * k * a)         # e^{-ika}
    fp = np.exp(1j * k * w * a)      # e^{+ikwa}
    fm = np.exp(-1j * k * w * a)     # e^{-ikwa}
    cols = []
    for am, bm in ((1.0, 0.0), (0.0, 1.0)):
        # unknowns: C, D, A+, B+
        A = np.array([
            [fm, fp, 0, 0],
            [w * fm, -w * fp, 0, 0],
            [fp, fm, -ep, -em],
            [w * fp, -w * fm, -ep, em],
        ], dtype=complex)
        b = np.array([
            am * em + bm * ep,
            am * em - bm * ep,
            0,
            0,
        ], dtype=complex)
        try:
            sol = np.linalg.solve(A, b)
        except np.linalg.LinAlgError as exc:
            raise NumericalDegeneracyError(str(exc)) from exc
        cols.append((sol[2], sol[3]))
    return TransferMatrix(m11=cols[0][0], m12=cols[1][0],
                          m21=cols[0][1], m22=cols[1][1])


def reduced_variables(spec, k):
    """Dimensionless variables (w, rho, sigma, y, q, r) for a barrier at k."""
    if not k > 0:
        raise ValueError(f"k must be positive, got {k}")
    rho = spec.z.real / k**2
    sigma = spec.z.imag / k**2
    if rho == 1:
        raise ValueError("rho = 1: y is undefined")
    y = sigma / (1 - rho)
    w = principal_sqrt_upper(1 - spec.z / k**2)
    s = np.sqrt(y * y + 1.0)
    ar = abs(1 - rho)
    chi = spec.alpha * k
    # s - 1 = y^2/(s+1) keeps q accurate for small y
    q = chi * np.sqrt(2 * ar / (s + 1.0)) * y
    r = chi * np.sqrt(2 * ar * (s + 1.0))
    return ReducedVariables(w=w, rho=rho, sigma=sigma, y=y, q=q, r=r)


def wavefunction_profile(spec, k, which, xs):
    """Scattering wavefunction psi(x) sampled at sorted positions xs (nm).

    which: 'left-incident' (unit wave from x = -inf) or 'right-incident'.
    psi and psi' are continuous at +-alpha by construction.
    """
    if not k > 0:
        raise ValueError(f"k must be positive, got {k}")
    if which not in ("left-incident", "right-incident"):
        raise ValueError(f"unknown incidence {which!r}")
    a = spec.alpha
    amp = amplitudes(transfer_matrix(spec, k))
    w = np.sqrt(complex(1 - spec.z / k**2))
    if w == 0:
        raise NumericalDegeneracyError("degenerate interior (z = k^2)")
    if which == "left-incident":
        # x < -a: e^{ikx} + R e^{-ikx};  x > a: T e^{ikx}
        a_l, b_l = 1.0, amp.r_left
        a_r, b_r = amp.t, 0.0
    else:
        # x > a: e^{-ikx} + R e^{ikx};  x < -a: T e^{-ikx}
        a_l, b_l = 0.0, amp.t
        a_r, b_r = amp.r_right, 1.0
    # interior C e^{ikwx} + D e^{-ikwx} matched at x = -a
    em = np.exp(-1j * k * a)
    ep = np.exp(1j * k * a)
    fm = np.exp(-1j * k * w * a)
    fp = np.exp(1j * k * w * a)
    A = np.array([[fm, fp], [w * fm, -w * fp]], dtype=complex)
    b = np.array([a_l * em + b_l * ep, a_l * em - b_l * ep], dtype=complex)
    try:
        c_in, d_in = np.linalg.solve(A, b)
    except np.linalg.LinAlgError as exc:
        raise NumericalDegeneracyError(str(exc)) from exc
    xs = np.asarray(xs, dtype=float)
    psi = np.empty(xs.shape, dtype=complex)
    left = xs < -a
    right = xs > a
    mid = ~(left | right)
    psi[left] = a_l * np.exp(1j * k * xs[left]) + b_l * np.exp(-1j * k * xs[left])
    psi[mid] = c_in * np.exp(1j * k * w * xs[mid]) + d_in * np.exp(-1j * k * w * xs[mid])
    psi[right] = a_r * np.exp(1j * k * xs[right]) + b_r * np.exp(-1j * k * xs[right])
    return psi
