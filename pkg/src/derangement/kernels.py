"""Kernel selection: compiled extension when importable, else pure Python.

Set ``DERANGEMENT_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from derangement import _kernels_py

BACKEND = "python"

if os.environ.get("DERANGEMENT_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from derangement import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
else:
    _impl = _kernels_py

poly_mul = _impl.poly_mul
rank_mod_p = _impl.rank_mod_p
rank_of_difference = _impl.rank_of_difference
count_fixed = _impl.count_fixed

__all__ = ["BACKEND", "poly_mul", "rank_mod_p", "rank_of_difference", "count_fixed"]
