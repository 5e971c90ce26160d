from fractions import Fraction

import pytest

from sralgebra import SRAlgebra, build_root_system

ACCEPTANCE_LINES = []


def make_algebra(family, param, *eta):
    return SRAlgebra(build_root_system(family, param, [Fraction(e) for e in eta]))


@pytest.fixture(scope="session")
def i2_3():
    return make_algebra("I2", 3, "1/3")


@pytest.fixture(scope="session")
def i2_3_generic():
    return make_algebra("I2", 3, "1/4")


@pytest.fixture(scope="session")
def a1():
    return make_algebra("A", 1, "1/2")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
