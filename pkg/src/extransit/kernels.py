"""Backend selection for the integer polynomial kernels.

The compiled extension is used when it has been built; setting
``EXTRANSIT_PURE_PYTHON=1`` forces the pure-Python fallback.
"""
import os

if os.environ.get("EXTRANSIT_PURE_PYTHON", "") not in ("", "0"):
    from ._kernels_py import *  # noqa: F401,F403
    BACKEND = "python"
else:
    try:
        from ._kernels import *  # noqa: F401,F403
        BACKEND = "compiled"
    except ImportError:
        from ._kernels_py import *  # noqa: F401,F403
        BACKEND = "python"
