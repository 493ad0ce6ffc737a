"""Kernel backend selection.

The compiled extension is preferred when importable; SF_PURE_PYTHON=1
forces the numpy fallback (useful for benchmarking and debugging).
"""

import os

if os.environ.get("SF_PURE_PYTHON", "") == "1":
    from . import _kernels_py as kernels

    BACKEND = "python"
else:
    try:
        from . import _kernels as kernels  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        from . import _kernels_py as kernels

        BACKEND = "python"
