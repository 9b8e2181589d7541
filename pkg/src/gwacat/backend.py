"""Kernel backend selection.

The Howell elimination kernels are compiled with numba by default.  Setting
the environment variable ``GWA_NO_NUMBA=1`` before import selects the pure
Python/numpy fallback (same code path, no JIT), which is useful for
debugging and as a reference in the benchmark suite.
"""

import os

USE_NUMBA = os.environ.get("GWA_NO_NUMBA", "0") in ("", "0")

if USE_NUMBA:
    try:
        from numba import njit as _njit
    except ImportError:  # pragma: no cover
        USE_NUMBA = False

BACKEND = "numba" if USE_NUMBA else "python"


def kernel(fn):
    """Compile ``fn`` with numba when the numba backend is active."""
    if USE_NUMBA:
        return _njit(cache=True)(fn)
    return fn
