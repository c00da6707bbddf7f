import pytest

from schur.coxeter import CoxeterSpec, CoxeterSystem

ACCEPTANCE_LINES: list[str] = []


def system(text: str) -> CoxeterSystem:
    return CoxeterSystem(CoxeterSpec.parse(text))


@pytest.fixture(scope="session")
def A1():
    return system("A1")


@pytest.fixture(scope="session")
def A2():
    return system("A2")


@pytest.fixture(scope="session")
def A3():
    return system("A3")


@pytest.fixture(scope="session")
def B2():
    return system("B2")


@pytest.fixture(scope="session")
def B3():
    return system("B3")


@pytest.fixture(scope="session")
def I5():
    return system("I2(5)")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
