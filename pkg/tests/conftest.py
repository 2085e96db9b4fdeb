import pytest

from zonocut.arrangement import ArrangementMatrix
from zonocut.construction import EasterEggParams, easteregg_matrix
from zonocut.zonotope import DualZonotope


@pytest.fixture(scope="session")
def cross2():
    """Two lines through the origin in the plane."""
    return ArrangementMatrix.from_rows([[1, 1], [1, -1]])


@pytest.fixture(scope="session")
def egg2():
    return easteregg_matrix(EasterEggParams(2, 1))


@pytest.fixture(scope="session")
def egg3():
    return easteregg_matrix(EasterEggParams(3, 1))


@pytest.fixture(scope="session")
def Z2(egg2):
    return DualZonotope(egg2)


@pytest.fixture(scope="session")
def Z3(egg3):
    return DualZonotope(egg3)


@pytest.fixture(scope="session")
def Z4():
    return DualZonotope(easteregg_matrix(EasterEggParams(4, 1)))


_CRITERIA: dict = {}


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line for an acceptance criterion; fails the test on FAIL."""
    def record(number: int, ok: bool, detail: str) -> None:
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:2d}: {detail}"
        _CRITERIA[(number, request.node.name)] = line
        print(line)
        assert ok, line
    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_CRITERIA):
        terminalreporter.write_line(_CRITERIA[key])
