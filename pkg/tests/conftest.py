import pytest

from gaingm import Group

ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])


@pytest.fixture(scope="session")
def d8():
    return Group.dihedral(4)


@pytest.fixture(scope="session")
def mu4():
    return Group.roots_of_unity(4)


@pytest.fixture(scope="session")
def s4():
    return Group.symmetric(4)


@pytest.fixture(scope="session")
def s3():
    return Group.symmetric(3)
