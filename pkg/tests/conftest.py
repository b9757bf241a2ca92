import pytest

from tfatom.potentials import AtomicModel
from tfatom.quadrature import tf_moments
from tfatom.tf_solver import TfParams, solve_tf

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def sol():
    return solve_tf(TfParams())


@pytest.fixture(scope="session")
def moments(sol):
    return tf_moments(sol)


@pytest.fixture(scope="session")
def hydrogen():
    return AtomicModel(1)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
