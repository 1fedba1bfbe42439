"""JIT switch for the numeric kernels.

Kernels are written once in the numba-compatible subset of Python. When
numba is importable and ``SIMPLECRYST_DISABLE_JIT`` is unset (or ``0``) they
are compiled with ``numba.njit``; otherwise the plain Python/numpy versions
run unchanged.
"""

import os

_flag = os.environ.get("SIMPLECRYST_DISABLE_JIT", "0").strip().lower()
_disabled = _flag not in ("", "0", "false", "no")

try:
    if _disabled:
        raise ImportError
    import numba

    HAVE_NUMBA = True
except ImportError:
    numba = None
    HAVE_NUMBA = False


def njit(func):
    """Compile ``func`` with numba when enabled, else return it as is.

    The uncompiled function stays reachable as ``func.py_func`` in both cases
    so benchmarks can compare the two paths side by side.
    """
    if HAVE_NUMBA:
        compiled = numba.njit(cache=True)(func)
        return compiled
    func.py_func = func
    return func
