"""Kernel backend selection: compiled Cython extension if available, numpy otherwise."""

try:
    from . import _kernels as _impl
    BACKEND = "compiled"
except ImportError:
    from . import _kernels_py as _impl
    BACKEND = "python"

f_scalar = _impl.f_scalar
f_grid = _impl.f_grid

__all__ = ["BACKEND", "f_scalar", "f_grid"]
