"""Kernel backend selection: compiled extension when available, numpy twin
otherwise.  Set HADAMARD6_PURE_PYTHON=1 to force the fallback."""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("HADAMARD6_PURE_PYTHON"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernels_py

BACKEND: str = _impl.BACKEND

fundamental_values = _impl.fundamental_values
fundamental_point = _impl.fundamental_point
