"""Numeric kernel selection: compiled extension if available, NumPy fallback
otherwise.  Set COXSPEC_PURE_PYTHON=1 to force the fallback."""

import os

if os.environ.get("COXSPEC_PURE_PYTHON"):
    from . import _pykernels as _impl

    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        from . import _pykernels as _impl

        BACKEND = "python"

power_iteration = _impl.power_iteration
jacobi_eigenvalues = _impl.jacobi_eigenvalues

__all__ = ["BACKEND", "jacobi_eigenvalues", "power_iteration"]
