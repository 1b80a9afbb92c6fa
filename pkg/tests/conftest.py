import pytest

from parcross import Context, FreeGroup


@pytest.fixture
def F2():
    return FreeGroup(["a", "b"])


@pytest.fixture
def ctx(F2):
    return Context(F2, ("1", "2"))


@pytest.fixture
def w(F2):
    return F2.parse


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
