import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from squanta import fixtures as fx

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def d2():
    return fx.d2()


@pytest.fixture(scope="session")
def c2():
    return fx.c2()


@pytest.fixture(scope="session")
def n2():
    return fx.n2()


@pytest.fixture(scope="session")
def n2q():
    return fx.n2_quantale()


@pytest.fixture(scope="session")
def m2():
    return fx.m2()


@pytest.fixture(scope="session")
def a3():
    return fx.a3()


@pytest.fixture(scope="session")
def a3_self():
    return fx.a3_self_module()


@pytest.fixture(scope="session")
def a3_sub2():
    return fx.a3_sub2_module()


@pytest.fixture(scope="session")
def m2_on_d2():
    return fx.m2_on_d2()


@pytest.fixture(scope="session")
def n3():
    return fx.n3()


@pytest.fixture(scope="session")
def n3_self():
    return fx.n3_self_module()
