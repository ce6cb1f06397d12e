"""Backend selection for the modular elimination kernels.

The compiled extension ``volrig._kernels`` is used when it imports and the
modulus fits in 63 bits; otherwise the pure-Python module is used. Setting
``VOLRIG_PURE_PYTHON=1`` forces the fallback (used by the benchmark and the
backend-equivalence tests).
"""

from __future__ import annotations

import logging
import os

from . import _kernels_py as python_backend

log = logging.getLogger(__name__)

try:
    from . import _kernels as compiled_backend
except ImportError:  # extension not built
    compiled_backend = None
    log.debug("compiled kernels unavailable; using pure-Python fallback")

if os.environ.get("VOLRIG_PURE_PYTHON") or compiled_backend is None:
    _default = python_backend
else:
    _default = compiled_backend

BACKEND = "python" if _default is python_backend else "compiled"

_MAX_COMPILED_MODULUS = 1 << 63


def _pick(q: int):
    if _default is not python_backend and q < _MAX_COMPILED_MODULUS:
        return _default
    return python_backend


def pivot_columns(rows, ncols: int, q: int) -> list[int]:
    return _pick(q).pivot_columns(rows, ncols, q)


def rank(rows, ncols: int, q: int) -> int:
    return _pick(q).rank(rows, ncols, q)


def det(rows, q: int) -> int:
    return _pick(q).det(rows, q)


def minors(matrix, row_sets, col_sets, q: int) -> list[list[int]]:
    return _pick(q).minors(matrix, row_sets, col_sets, q)
