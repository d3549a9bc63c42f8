import pytest

from extremeorders import presets
from extremeorders.grid import default_grid

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def grid():
    return default_grid()


@pytest.fixture(scope="session")
def ex1():
    return presets.example1()


@pytest.fixture(scope="session")
def ex2():
    return presets.example2()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
