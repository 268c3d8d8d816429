"""Kernel selection: compiled extension if built, numpy fallback otherwise.

Set ``AQWALK_KERNEL=python`` or ``AQWALK_KERNEL=cython`` to force a choice;
the default (``auto``) prefers the compiled kernel.  The active kernel name
is recorded in run metadata.
"""

from __future__ import annotations

import os

from . import _walk_py

try:
    from . import _walk_cy
except ImportError:  # extension not built; the fallback is fully equivalent
    _walk_cy = None

_requested = os.environ.get("AQWALK_KERNEL", "auto").strip().lower()
if _requested in ("", "auto"):
    _impl = _walk_cy if _walk_cy is not None else _walk_py
elif _requested == "cython":
    if _walk_cy is None:
        raise ImportError("AQWALK_KERNEL=cython, but the compiled kernel is not built")
    _impl = _walk_cy
elif _requested == "python":
    _impl = _walk_py
else:
    raise ImportError(f"unknown AQWALK_KERNEL value {_requested!r}")

evolve_window = _impl.evolve_window
KERNEL_NAME = "cython" if _impl is _walk_cy else "python"


def available_kernels() -> dict[str, object]:
    """Name -> module for every kernel importable in this environment."""
    kernels = {"python": _walk_py}
    if _walk_cy is not None:
        kernels["cython"] = _walk_cy
    return kernels
