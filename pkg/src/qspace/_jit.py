"""numba switch for the permanent/determinant kernels.

Set ``QSPACE_DISABLE_NUMBA=1`` to force the pure-numpy kernels.  The numpy
path is also used when numba cannot be imported.
"""

import os

_FALSY = {"", "0", "false", "no", "off"}

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and os.environ.get("QSPACE_DISABLE_NUMBA", "").strip().lower() in _FALSY


def njit(func):
    """``numba.njit(cache=True)`` when numba is importable, identity otherwise."""
    if HAVE_NUMBA:
        return numba.njit(cache=True)(func)
    return func
