"""Enumeration kernels: compiled extension when built, pure Python otherwise.

Set ``SYMDIST_PURE_PYTHON=1`` to force the fallback at import time.
"""

from __future__ import annotations

import os

from . import _pykernel

try:
    if os.environ.get("SYMDIST_PURE_PYTHON"):
        raise ImportError("pure-Python kernels requested")
    from . import _ckernel
except ImportError:
    _ckernel = None

HAVE_EXTENSION = _ckernel is not None
DEFAULT_BACKEND = "cython" if HAVE_EXTENSION else "python"


def available_backends() -> list[str]:
    return ["cython", "python"] if HAVE_EXTENSION else ["python"]


def kernel_class(backend: str | None = None):
    backend = backend or DEFAULT_BACKEND
    if backend == "python":
        return _pykernel.GammaKernel
    if backend == "cython":
        if _ckernel is None:
            raise RuntimeError("compiled kernels are not built; reinstall or use backend='python'")
        return _ckernel.GammaKernel
    raise ValueError(f"unknown backend {backend!r}")


__all__ = ["DEFAULT_BACKEND", "HAVE_EXTENSION", "available_backends", "kernel_class"]
