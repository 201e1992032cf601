"""Optional numba acceleration.

Set ``FPGROUP_DISABLE_NUMBA=1`` to run every kernel as plain Python over
numpy arrays.  Jitted kernels keep the uncompiled function on ``.py_func``
so both paths stay reachable in one process.
"""

import os

try:
    from numba import njit as _numba_njit
    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - exercised only without numba installed
    _numba_njit = None
    NUMBA_AVAILABLE = False

USE_NUMBA = NUMBA_AVAILABLE and os.environ.get("FPGROUP_DISABLE_NUMBA", "").strip() not in ("1", "true", "yes")


def njit(*args, **kwargs):
    """``numba.njit`` when enabled, otherwise a no-op decorator exposing ``py_func``."""
    if USE_NUMBA:
        return _numba_njit(*args, **kwargs)

    def wrap(fn):
        fn.py_func = fn
        return fn

    if len(args) == 1 and callable(args[0]) and not kwargs:
        return wrap(args[0])
    return wrap
