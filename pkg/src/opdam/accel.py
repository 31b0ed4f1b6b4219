"""Backend selection for the hot numeric kernels.

``OPDAM_ACCEL`` picks the implementation:

* ``auto`` (default) - numba when importable, else the numpy fallback;
* ``numba``          - require the compiled path, raise if unavailable;
* ``numpy``          - force the pure-numpy fallback.

Both backends implement identical contracts; ``benchmarks/bench_kernels.py``
compares them.
"""
from __future__ import annotations

import os

from .errors import ParameterError

_MODE = os.environ.get("OPDAM_ACCEL", "auto").strip().lower()
if _MODE not in ("auto", "numba", "numpy"):
    raise ParameterError(f"OPDAM_ACCEL must be auto|numba|numpy, got {_MODE!r}")


def _load(mode: str):
    if mode == "numpy":
        from . import _kernels_numpy as impl
        return impl
    try:
        from . import _kernels_numba as impl
        return impl
    except ImportError:
        if mode == "numba":
            raise
        from . import _kernels_numpy as impl
        return impl


_impl = _load(_MODE)
BACKEND = _impl.BACKEND_NAME

hyp2f1_series = _impl.hyp2f1_series
rk_smooth_vals = _impl.rk_smooth_vals


def get_backend(name: str):
    """Explicit backend module (for tests and benchmarks)."""
    if name not in ("numba", "numpy"):
        raise ParameterError(f"unknown backend {name!r}")
    return _load(name)
