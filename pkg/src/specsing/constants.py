"""Unit system and the upper-half-plane square-root branch.

Internal units: energies in eV (with hbar = 1), lengths in nm, wave numbers
in nm^-1.  The single conversion constant is hbar*c in eV*nm.
"""

import cmath

import numpy as np

__all__ = ["HBAR_C_EV_NM", "principal_sqrt_upper", "ev_to_inverse_nm"]

# hbar * c in eV * nm (CODATA 2018)
HBAR_C_EV_NM = 197.3269804


def principal_sqrt_upper(u):
    """Square root of a complex number with argument in [0, pi).

    This is NOT the standard principal branch: of the two roots of u we pick
    the one in the closed upper half plane, with the positive real axis
    included and the negative real axis excluded.  For Im(u) != 0 this flips
    the sign of the standard root whenever that root has negative imaginary
    part.

    Accepts scalars or arrays; u = 0 returns 0.
    """
    if np.isscalar(u) or isinstance(u, complex):
        s = cmath.sqrt(u)
        if s.imag > 0 or (s.imag == 0 and s.real >= 0):
            return s
        return -s
    s = np.sqrt(np.asarray(u, dtype=np.complex128))
    flip = (s.imag < 0) | ((s.imag == 0) & (s.real < 0))
    return np.where(flip, -s, s)


def ev_to_inverse_nm(omega_ev):
    """Convert an energy (hbar*omega, eV) to a vacuum wave number omega/c in nm^-1."""
    if omega_ev < 0:
        raise ValueError(f"energy must be non-negative, got {omega_ev}")
    return omega_ev / HBAR_C_EV_NM
