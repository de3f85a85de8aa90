"""Kernel selection: the compiled extension when importable, numpy otherwise.

Set ``DRGALG_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _fallback

BACKEND = "python"
jacobi_eigh = _fallback.jacobi_eigh
rref_mod_p = _fallback.rref_mod_p

if not os.environ.get("DRGALG_PURE_PYTHON"):
    try:
        from . import _kernels
    except ImportError:  # extension not built
        pass
    else:
        jacobi_eigh = _kernels.jacobi_eigh
        rref_mod_p = _kernels.rref_mod_p
        BACKEND = "cython"
