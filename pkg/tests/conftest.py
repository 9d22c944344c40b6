import pytest
from hypothesis import HealthCheck, settings

from eckardt.exactpoly import variables
from eckardt.fixtures import fix1, fix3

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture(scope="session")
def X1():
    return fix1()


@pytest.fixture(scope="session")
def X3():
    return fix3()


@pytest.fixture
def x5():
    return variables(5)


@pytest.fixture
def x4():
    return variables(4)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod and mod.LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(mod.LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
