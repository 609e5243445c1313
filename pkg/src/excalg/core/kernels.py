"""Kernel dispatch: the compiled extension when importable, numpy otherwise.

Set EXCALG_PURE=1 to force the fallback.
"""
import os

from . import _fallback

COMPILED = False
_impl = _fallback
if os.environ.get("EXCALG_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _impl  # type: ignore
        COMPILED = True
    except ImportError:
        _impl = _fallback


def backend():
    return "cython" if COMPILED else "numpy"


def greedy_rows_modp(A, p):
    return _impl.greedy_rows_modp(A, p)


def rref_modp(A, p):
    return _impl.rref_modp(A, p)


def jacobi_scan(indptr, indices, data, n, triples, p=0):
    return _impl.jacobi_scan(indptr, indices, data, n, triples, p)
