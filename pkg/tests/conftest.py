import pytest

from sftperturb.sft import cycle_shift, full_shift, golden_mean_shift

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def FULL2():
    return full_shift(2)


@pytest.fixture(scope="session")
def GOLDEN():
    return golden_mean_shift()


@pytest.fixture(scope="session")
def CYCLE3():
    return cycle_shift(3)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
