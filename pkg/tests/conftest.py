import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20161016)


def random_density(rng, n, rank=None):
    rank = rank or n
    z = rng.normal(size=(n, rank)) + 1j * rng.normal(size=(n, rank))
    rho = z @ z.conj().T
    return rho / np.trace(rho).real


def random_unit(rng, n):
    z = rng.normal(size=n) + 1j * rng.normal(size=n)
    return z / np.linalg.norm(z)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
