"""Switch between numba-compiled kernels and the pure-numpy fallback.

Set ``TORUSLAT_NUMBA=0`` in the environment before import to force the
numpy path.  Both paths compute identical results; only speed differs.
"""

import os

_flag = os.environ.get("TORUSLAT_NUMBA", "1").strip().lower()

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

USE_NUMBA = numba is not None and _flag not in ("0", "false", "no", "off")


def njit(fn):
    """Compile ``fn`` with numba when enabled, otherwise return it unchanged."""
    if USE_NUMBA:
        return numba.njit(cache=True)(fn)
    return fn


def backend():
    return "numba" if USE_NUMBA else "numpy"
