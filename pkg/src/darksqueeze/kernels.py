"""Kernel backend selection.

Imports the compiled extension ``darksqueeze._kernels`` when available and
falls back to the pure-NumPy twin otherwise.  Set the environment variable
``DARKSQUEEZE_PURE_PYTHON=1`` to force the fallback (used by the backend
parity tests and the benchmark).
"""

from __future__ import annotations

import os

if os.environ.get("DARKSQUEEZE_PURE_PYTHON"):
    from darksqueeze import _kernels_py as _impl
else:
    try:
        from darksqueeze import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from darksqueeze import _kernels_py as _impl

BACKEND: str = _impl.BACKEND
popcount_table = _impl.popcount_table
apply_sigma_raise = _impl.apply_sigma_raise
apply_sigma_lower = _impl.apply_sigma_lower
trit_hamiltonian_apply = _impl.trit_hamiltonian_apply
kraus_site = _impl.kraus_site

__all__ = [
    "BACKEND",
    "popcount_table",
    "apply_sigma_raise",
    "apply_sigma_lower",
    "trit_hamiltonian_apply",
    "kraus_site",
]
