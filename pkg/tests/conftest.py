import random
from fractions import Fraction

import pytest

from binomap import PolynomialSystem, adjacent_minors


def random_binomial_system(rng: random.Random, max_eqs=6, max_vars=10, max_exp=3,
                           coeffs=(1, -1, 2, -2, Fraction(1, 2))):
    n = rng.randint(1, max_vars)
    names = [f"v{k}" for k in range(n)]
    equations = []
    for _ in range(rng.randint(1, max_eqs)):
        while True:
            a = tuple(rng.randint(0, max_exp) for _ in range(n))
            b = tuple(rng.randint(0, max_exp) for _ in range(n))
            if a != b:
                break
        equations.append([(rng.choice(coeffs), a), (rng.choice(coeffs), b)])
    return PolynomialSystem.from_terms(names, equations)


@pytest.fixture
def minors23():
    return adjacent_minors(2, 3)


@pytest.fixture
def minors24():
    return adjacent_minors(2, 4)


_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, text): acceptance criterion")


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when != "call":
        return
    number, text = marker.args
    ok = call.excinfo is None
    prev = _criteria.get(number, (text, True))
    _criteria[number] = (text, prev[1] and ok)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        text, ok = _criteria[number]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {number:>2}: {text}")
