"""Hot projected-gradient kernels with a compiled core and a numpy fallback.

The backend is picked once at import time.  Set ``RSMARIS_KERNEL=numpy`` to
force the pure-Python implementation (useful for benchmarking), or
``RSMARIS_KERNEL=cython`` to fail loudly if the extension is missing.
"""

import os

_requested = os.environ.get("RSMARIS_KERNEL", "auto")

if _requested not in ("auto", "cython", "numpy"):
    raise ValueError(f"RSMARIS_KERNEL must be auto|cython|numpy, got {_requested!r}")

if _requested in ("auto", "cython"):
    try:
        from ._pg_cython import ascend, descend

        BACKEND = "cython"
    except ImportError:
        if _requested == "cython":
            raise
        from ._pg_numpy import ascend, descend

        BACKEND = "numpy"
else:
    from ._pg_numpy import ascend, descend

    BACKEND = "numpy"

__all__ = ["ascend", "descend", "BACKEND"]
