import pytest

from projmorph import fixtures
from projmorph.modcat import set_seed

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(autouse=True)
def _fixed_seed():
    set_seed(0)
    yield


@pytest.fixture
def A2():
    return fixtures.A2()


@pytest.fixture
def A3r():
    return fixtures.A3r()


@pytest.fixture
def A3():
    return fixtures.A3()


@pytest.fixture
def k():
    return fixtures.field()


@pytest.fixture
def dual():
    return fixtures.dual_numbers()


@pytest.fixture
def A3s():
    return fixtures.A3_source()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
