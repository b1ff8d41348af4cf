import pytest

from pcologic.examples import binary_signature, arithmetic_chain
from pcologic.oracle import EnumerationBudget, enumerate_models

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def chain():
    return arithmetic_chain()


@pytest.fixture(scope="session")
def xy():
    return binary_signature("X", "Y")


@pytest.fixture(scope="session")
def xyz():
    return binary_signature("X", "Y", "Z")


@pytest.fixture(scope="session")
def budget2(xy):
    return EnumerationBudget(xy, 4)


@pytest.fixture(scope="session")
def models2(budget2):
    return list(enumerate_models(budget2))


@pytest.fixture(scope="session")
def budget3(xyz):
    return EnumerationBudget(xyz, 3)


@pytest.fixture(scope="session")
def models3(budget3):
    return list(enumerate_models(budget3))
