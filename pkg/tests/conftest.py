import numpy as np
import pytest

from toeplitz_sne.toeplitz_core import build_toeplitz

EPS = 2.0 ** -53


def random_toeplitz(rng, m, n=None, mu=0.0, sigma=1.0):
    n = m if n is None else n
    d = mu + sigma * rng.standard_normal(m + n - 1)
    return build_toeplitz(d[m - 1::-1], d[m - 1:])


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def tridiag():
    return build_toeplitz([2, 1, 0], [2, 1, 0])


@pytest.fixture
def identity3():
    return build_toeplitz([1, 0, 0], [1, 0, 0])


ACCEPTANCE_LINES = []


def record_criterion(number, ok, detail):
    line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
