"""Pure-Python basis-sign kernel; reference semantics for the compiled one."""

from itertools import combinations

from .linalg import bareiss_det


def basis_signs(rows, r):
    """Sign of every r x r minor of ``rows`` (integer vectors), lex subset order."""
    out = []
    for subset in combinations(rows, r):
        d = bareiss_det([list(v) for v in subset])
        out.append((d > 0) - (d < 0))
    return out
