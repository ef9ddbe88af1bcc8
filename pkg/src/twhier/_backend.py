"""Select the kernel backend at import time.

The compiled extension is used when available; otherwise the
pure-Python fallback with the identical API.  Set ``TWHIER_PURE=1`` in
the environment to force the fallback (used by the benchmark and by the
backend-agreement tests).
"""

import os

if os.environ.get("TWHIER_PURE"):
    from . import _kernels_py as kernels

    BACKEND = "python"
else:
    try:
        from . import _kernels as kernels  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        from . import _kernels_py as kernels

        BACKEND = "python"


def backend_name():
    """Name of the active kernel backend ("cython" or "python")."""
    return BACKEND
