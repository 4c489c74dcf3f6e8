"""Numba switch.

Set ``ACFGEOM_DISABLE_NUMBA=1`` to run the pure-numpy kernels.  If numba is
not importable the numpy path is used regardless.
"""
import os
import warnings

_disabled = os.environ.get("ACFGEOM_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes")

try:
    from numba import njit
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda f: f

    if not _disabled:
        warnings.warn("numba not available; falling back to numpy kernels")

USE_NUMBA = HAVE_NUMBA and not _disabled
