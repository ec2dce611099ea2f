"""Kernel dispatch: compiled Cython core when available, Python otherwise.

Set ``QCAUDIT_PURE_PYTHON=1`` to force the Python implementations.
"""
from __future__ import annotations

import os

from . import _pykernels
from ._pykernels import ANTIDIAGONAL, BLOCKDIAGONAL, PRODUCT, assemble_family

__all__ = [
    "ANTIDIAGONAL",
    "BLOCKDIAGONAL",
    "PRODUCT",
    "BACKEND",
    "assemble_family",
    "family_deltas",
    "jacobi_eigh",
]

_ckernels = None
if not os.environ.get("QCAUDIT_PURE_PYTHON"):
    try:
        from . import _ckernels
    except ImportError:
        _ckernels = None

if _ckernels is not None:
    BACKEND = "cython"
    jacobi_eigh = _ckernels.jacobi_eigh
    family_deltas = _ckernels.family_deltas
else:
    BACKEND = "python"
    jacobi_eigh = _pykernels.jacobi_eigh
    family_deltas = _pykernels.family_deltas
