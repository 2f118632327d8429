"""Torque-kernel backend selection.

The compiled Cython kernel is preferred when its extension module was
built; otherwise the numpy implementation is used. Set the environment
variable ``DYNSOLVE_PURE_PYTHON=1`` before import to force the fallback
(useful for debugging and for benchmarking the two side by side).
"""

import os

if os.environ.get("DYNSOLVE_PURE_PYTHON"):
    from . import _kernel_py as _kernel
else:
    try:
        from . import _kernel_cy as _kernel  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernel_py as _kernel

rnea_kernel = _kernel.rnea_kernel


def backend_name() -> str:
    """Name of the active kernel backend: 'cython' or 'python'."""
    return _kernel.BACKEND_NAME
