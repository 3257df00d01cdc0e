"""numba switch.

Kernels are written once in loop form and decorated with :func:`njit`.  When
numba is missing, or ``POWERSYM_DISABLE_NUMBA`` is set to a truthy value, the
decorator is a no-op and callers dispatch to the vectorised numpy routes
instead of running the loops in the interpreter.
"""
import os

_TRUTHY = {"1", "true", "yes", "on"}

DISABLED_BY_ENV = os.environ.get("POWERSYM_DISABLE_NUMBA", "").strip().lower() in _TRUTHY

try:
    if DISABLED_BY_ENV:
        raise ImportError("numba disabled by POWERSYM_DISABLE_NUMBA")
    from numba import njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]

        def wrap(func):
            return func

        return wrap


def default_backend():
    return "numba" if HAVE_NUMBA else "numpy"
