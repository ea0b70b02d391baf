"""Kernel backend selection.

Hot inner loops (Green's-function matrix assembly, closed-form phase sums,
the Jacobi eigensolver) exist twice: a numba ``@njit`` implementation in
``_kernels_numba`` and a pure-numpy twin in ``_kernels_numpy``.  The numba
path is used when available; set ``NFEDOF_BACKEND=numpy`` to force the
fallback (or ``NFEDOF_BACKEND=numba`` to fail loudly if numba is missing).
Matrix products stay in numpy/BLAS on both paths.
"""

from __future__ import annotations

import os

from .errors import ArgumentError

_VALID = ("auto", "numba", "numpy")
_active = None
_active_name = ""


def _resolve(name: str):
    if name == "numpy":
        from . import _kernels_numpy

        return _kernels_numpy, "numpy"
    try:
        from . import _kernels_numba

        return _kernels_numba, "numba"
    except ImportError:
        if name == "numba":
            raise
        from . import _kernels_numpy

        return _kernels_numpy, "numpy"


def set_backend(name: str) -> str:
    """Select the kernel backend ("auto", "numba" or "numpy")."""
    global _active, _active_name
    name = name.strip().lower()
    if name not in _VALID:
        raise ArgumentError(f"unknown backend {name!r}; expected one of {_VALID}")
    _active, _active_name = _resolve(name)
    return _active_name


def get_kernels():
    """Return the active kernel module, initialising from the env on first use."""
    global _active, _active_name
    if _active is None:
        set_backend(os.environ.get("NFEDOF_BACKEND", "auto"))
    return _active


def backend_name() -> str:
    get_kernels()
    return _active_name
