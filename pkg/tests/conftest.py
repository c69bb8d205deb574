import numpy as np
import pytest

from dressedlambda.matching import Level, find_matching_power
from dressedlambda.model import reference_params


@pytest.fixture(scope="session")
def nesting():
    return reference_params(4.87)


@pytest.fixture(scope="session")
def unnesting():
    return reference_params(4.83)


@pytest.fixture(scope="session")
def match4(nesting):
    return find_matching_power(nesting, Level.FOUR)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


ACCEPTANCE_LINES = {}


def record_criterion(number, passed, detail):
    line = f"criterion {number}: {'PASS' if passed else 'FAIL'} - {detail}"
    ACCEPTANCE_LINES[number] = line
    print(line)
    return passed


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[number])
