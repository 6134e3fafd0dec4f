"""Backend selection for the subset-scan kernels.

The compiled module is used when it imports; setting ``CHAMBERISO_PURE=1``
forces the pure-Python implementation.  ``BACKEND`` names the active one.
"""

import os

from . import _kernels_py

INF = _kernels_py.INF
MAX_COMPILED_VERTICES = 63

_compiled = None
if os.environ.get("CHAMBERISO_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled
    except ImportError:
        _compiled = None

BACKEND = "compiled" if _compiled is not None else "python"


def _pick(nv: int):
    if _compiled is not None and nv <= MAX_COMPILED_VERTICES:
        return _compiled
    return _kernels_py


def gray_min_boundary(nbr, deg, fix_last=True):
    return _pick(len(nbr)).gray_min_boundary(list(nbr), list(deg), fix_last)


def combo_min_boundary(nbr, deg, size):
    return _pick(len(nbr)).combo_min_boundary(list(nbr), list(deg), size)


def gray_min_conductance(nbr, deg):
    if len(nbr) < 2:
        raise ValueError("conductance needs at least two vertices")
    return _pick(len(nbr)).gray_min_conductance(list(nbr), list(deg))


for _name in ("gray_min_boundary", "combo_min_boundary", "gray_min_conductance"):
    globals()[_name].__doc__ = getattr(_kernels_py, _name).__doc__
