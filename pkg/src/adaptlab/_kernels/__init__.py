"""Kernel backend selection: compiled Cython core with pure-numpy fallback.

Set ADAPTLAB_FORCE_PY=1 to force the fallback (used by the benchmark and by
tests that cross-check the two backends).
"""

from __future__ import annotations

import os

from . import _py

if os.environ.get("ADAPTLAB_FORCE_PY") == "1":
    _impl = _py
    BACKEND = "python"
else:
    try:
        from . import _core as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _py
        BACKEND = "python"

apply_pauli_sum = _impl.apply_pauli_sum
expectation_pauli_sum = _impl.expectation_pauli_sum

__all__ = ["apply_pauli_sum", "expectation_pauli_sum", "BACKEND"]
