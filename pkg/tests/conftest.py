import pytest

from excalg.core.field import parse_field

ACCEPTANCE = []


@pytest.fixture(scope="session")
def QQ():
    return parse_field("q")


@pytest.fixture(scope="session")
def F7():
    return parse_field("fp:7")


@pytest.fixture(scope="session")
def acceptance_log():
    return ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[1].rstrip(":"))):
        terminalreporter.write_line(line)
