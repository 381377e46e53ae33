"""Kernel selection.

The compiled extension is used when it imports; set
``SOCIALCENTRALITY_BACKEND=python`` to force the pure-Python kernels.
"""

from __future__ import annotations

import os

from . import _truss_py

_forced = os.environ.get("SOCIALCENTRALITY_BACKEND", "").strip().lower()

if _forced == "python":
    kernels = _truss_py
    BACKEND = "python"
else:
    try:
        from . import _truss_ext as kernels  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        if _forced == "cython":
            raise
        kernels = _truss_py
        BACKEND = "python"


def available_backends() -> dict:
    """Name -> kernel module for every backend importable in this process."""
    found = {"python": _truss_py}
    try:
        from . import _truss_ext

        found["cython"] = _truss_ext
    except ImportError:
        pass
    return found
