import random
from itertools import combinations

import pytest

from conftest import cofactor_det
from neighborly import kernels


def _sign(x):
    return (x > 0) - (x < 0)


def test_python_kernel_matches_cofactor_oracle():
    rng = random.Random(5)
    rows = [[rng.randint(-5, 5) for _ in range(4)] for _ in range(7)]
    expected = [_sign(cofactor_det([list(v) for v in s])) for s in combinations(rows, 4)]
    assert kernels.basis_signs_python(rows, 4) == expected


@pytest.mark.skipif(kernels._compiled is None, reason="compiled kernel not built")
@pytest.mark.parametrize("bound", [3, 10**4, 10**9, 10**18, 10**30])
def test_compiled_matches_python(bound):
    rng = random.Random(bound % 97)
    for r in (1, 2, 3, 5):
        rows = [[rng.randint(-bound, bound) for _ in range(r)] for _ in range(r + 4)]
        rows.append(list(rows[0]))  # forces zero minors
        assert kernels.basis_signs_compiled(rows, r) == kernels.basis_signs_python(rows, r)


def test_backend_reported():
    assert kernels.BACKEND in ("cython", "python")


def test_pure_python_forced_by_environment():
    import os
    import subprocess
    import sys

    env = dict(os.environ, NEIGHBORLY_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "import neighborly.kernels as k; print(k.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"
