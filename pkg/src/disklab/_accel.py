"""Numba switch.

Set ``DISKLAB_NO_NUMBA=1`` to force the pure numpy/scipy code paths.
"""
import os

_DISABLED = os.environ.get("DISKLAB_NO_NUMBA", "").strip().lower() in ("1", "true", "yes", "on")

try:
    if _DISABLED:
        raise ImportError("numba disabled by DISKLAB_NO_NUMBA")
    import numba as nb

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - depends on environment
    nb = None
    HAVE_NUMBA = False

CACHE = True


def njit(*args, **kwargs):
    """``numba.njit`` when available, otherwise an identity decorator."""
    if HAVE_NUMBA:
        kwargs.setdefault("cache", CACHE)
        return nb.njit(*args, **kwargs)
    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]
    return lambda f: f


def use_numba():
    return HAVE_NUMBA
