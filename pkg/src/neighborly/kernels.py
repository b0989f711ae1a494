"""Selects the compiled basis-sign kernel when available.

Set ``NEIGHBORLY_PURE_PYTHON=1`` to force the pure-Python implementation.
"""

import os

from . import _kernels_py
from .linalg import bareiss_det

BACKEND = "python"
_compiled = None
if not os.environ.get("NEIGHBORLY_PURE_PYTHON"):
    try:
        from . import _kernels as _compiled  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        _compiled = None


def basis_signs_python(rows, r):
    return _kernels_py.basis_signs(rows, r)


def basis_signs_compiled(rows, r):
    """Compiled kernel with exact big-integer recovery on overflow."""
    if _compiled is None:
        raise RuntimeError("compiled kernel is not built")
    try:
        signs = _compiled.basis_signs(rows, r)
    except OverflowError:
        return _kernels_py.basis_signs(rows, r)
    if _compiled.OVERFLOW in signs:
        from itertools import combinations

        for i, subset in enumerate(combinations(rows, r)):
            if signs[i] == _compiled.OVERFLOW:
                d = bareiss_det([list(v) for v in subset])
                signs[i] = (d > 0) - (d < 0)
    return signs


def basis_signs(rows, r):
    """Signs of all r x r minors of integer ``rows``, lexicographic subset order."""
    if _compiled is not None:
        return basis_signs_compiled(rows, r)
    return _kernels_py.basis_signs(rows, r)
