"""Select the compiled kernels when available, else the pure-Python ones.

Set PADICHYP_BACKEND=python to force the fallback.
"""
import os

from . import _kernels_py

_compiled = None
if os.environ.get("PADICHYP_BACKEND", "").lower() != "python":
    try:
        from . import _kernels as _compiled
    except ImportError:
        _compiled = None

BACKEND = "compiled" if _compiled is not None else "python"


def _pick(name, force=None):
    if force == "python" or _compiled is None:
        return getattr(_kernels_py, name), None
    return getattr(_compiled, name), getattr(_kernels_py, name)


def hyper_partial_sums(*args, backend=None):
    fn, fallback = _pick("hyper_partial_sums", backend)
    try:
        return fn(*args)
    except OverflowError as exc:
        # the compiled loop refuses moduli beyond 63 bits; guard underflow is
        # a real signal and goes back to the caller
        if fallback is None or "guard" in str(exc):
            raise
        return fallback(*args)


def gamma_p_direct(m, p, K, backend=None):
    fn, fallback = _pick("gamma_p_direct", backend)
    try:
        return fn(m, p, K)
    except OverflowError:
        if fallback is None:
            raise
        return fallback(m, p, K)
