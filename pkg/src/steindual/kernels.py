"""Kernel backend selection.

The compiled extension is used when it imports and ``STEINDUAL_PURE_PYTHON``
is not set to ``1``; otherwise the pure-Python reference kernels are used.
``BACKEND`` names the active choice.
"""

import os

from . import _kernels_py as python_backend

compiled_backend = None
if os.environ.get("STEINDUAL_PURE_PYTHON", "") != "1":
    try:
        from . import _kernels as compiled_backend
    except ImportError:  # extension not built
        compiled_backend = None

_active = compiled_backend if compiled_backend is not None else python_backend
BACKEND = "cython" if compiled_backend is not None else "python"

find_nonassociative = _active.find_nonassociative
restriction_matrix = _active.restriction_matrix
domination_witnesses = _active.domination_witnesses
orthogonality_matrix = _active.orthogonality_matrix
