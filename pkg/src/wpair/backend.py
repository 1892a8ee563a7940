"""Kernel backend selection.

The compiled Cython kernels are used when importable; otherwise the
numpy-backed fallback in :mod:`wpair._kernels_py` provides the identical
contract.  Set the environment variable ``WPAIR_PURE_PYTHON=1`` to force
the fallback (used by the benchmark script and for debugging).
"""

import os

if os.environ.get("WPAIR_PURE_PYTHON", "").strip() not in ("", "0"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]
    except ImportError:
        from . import _kernels_py as _impl

BACKEND = _impl.BACKEND_NAME

herm_eigh = _impl.herm_eigh
batch_eigvalsh = _impl.batch_eigvalsh
support_sweep = _impl.support_sweep


def backend_name():
    """'compiled' or 'python', whichever is actually in use."""
    return BACKEND


def using_compiled():
    return BACKEND == "compiled"
