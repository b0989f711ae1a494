import random
from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import strategies as st

from neighborly.chirotope import VectorConfiguration, chirotope_from_configuration, is_uniform


def cofactor_det(m):
    """Laplace expansion along the first row; independent determinant oracle."""
    n = len(m)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(m[0][0])
    total = Fraction(0)
    for j in range(n):
        minor = [row[:j] + row[j + 1 :] for row in m[1:]]
        total += (-1) ** j * Fraction(m[0][j]) * cofactor_det(minor)
    return total


def perm_sign(seq):
    inv = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return -1 if inv % 2 else 1


def random_configuration(rng, n, r, lo=-6, hi=6, uniform=True, rational=False):
    while True:
        vecs = []
        for _ in range(n):
            if rational:
                vecs.append(tuple(Fraction(rng.randint(lo, hi), rng.randint(1, 4)) for _ in range(r)))
            else:
                vecs.append(tuple(Fraction(rng.randint(lo, hi)) for _ in range(r)))
        v = VectorConfiguration(tuple(vecs))
        if v.rank() < r:
            continue
        if uniform and not is_uniform(chirotope_from_configuration(v)):
            continue
        return v


@pytest.fixture
def rng():
    return random.Random(20261014)


small_ints = st.integers(min_value=-9, max_value=9)
rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def rational_matrices(draw, max_size=5, square=False):
    rows = draw(st.integers(1, max_size))
    cols = rows if square else draw(st.integers(1, max_size))
    return [[draw(rationals) for _ in range(cols)] for _ in range(rows)]


@st.composite
def configurations(draw, max_n=8, max_r=4, min_r=1):
    r = draw(st.integers(min_r, max_r))
    n = draw(st.integers(r, max_n))
    vecs = [tuple(Fraction(draw(small_ints)) for _ in range(r)) for _ in range(n)]
    v = VectorConfiguration(tuple(vecs))
    from hypothesis import assume

    assume(v.rank() == r)
    return v


_acceptance = []


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: exit criteria")


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py::test_criterion" in report.nodeid:
        name = report.nodeid.split("[", 1)[1].rstrip("]")
        _acceptance.append((name, report.outcome, report.duration))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome, duration in _acceptance:
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'} {name} ({duration:.2f}s)")
