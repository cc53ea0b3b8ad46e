"""Backend selection for the scan kernels.

Prefers the compiled extension; falls back to the pure-Python twin when
the build is unavailable. Both expose the same functions and results.
"""

from __future__ import annotations

from . import _kernels_py

try:
    from . import _kernels as _impl

    BACKEND = "compiled"
except ImportError:  # extension not built on this install
    _impl = _kernels_py
    BACKEND = "pure"

min_weight_scan = _impl.min_weight_scan
windowed_scan = _impl.windowed_scan


def available_backends() -> dict:
    """Name -> module for every importable backend (used by benchmarks)."""
    out = {"pure": _kernels_py}
    if BACKEND == "compiled":
        out["compiled"] = _impl
    return out
