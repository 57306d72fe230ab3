"""Kernel backend selection.

The compiled extension is used when it imports; otherwise the pure-Python
module provides the same functions.  Set ``RMLAB_PURE_PYTHON=1`` to force the
fallback.
"""

import os

from . import _kernels_py as python_backend

compiled_backend = None
if not os.environ.get("RMLAB_PURE_PYTHON"):
    try:
        from . import _kernels as compiled_backend
    except ImportError:  # extension not built
        compiled_backend = None

kernels = compiled_backend if compiled_backend is not None else python_backend
BACKEND = kernels.BACKEND

# Largest m handled by the bit-packed binary kernels (uint64 with one spare bit).
BINARY_MAX_M = 62


def available_backends():
    out = [python_backend]
    if compiled_backend is not None:
        out.append(compiled_backend)
    return out
