from fractions import Fraction

import pytest

from blotto_rde.matrix_game import blotto_game

H = Fraction(1, 2)

MATRIX_4V4 = [[H, 1, 1], [1, H, 1], [1, 1, 0]]
MATRIX_8V9 = [
    [H, H, 1, 1, 1],
    [1, H, H, 1, 1],
    [1, 1, H, H, 1],
    [1, 1, 1, H, H],
    [1, 1, 1, 1, 0],
]


@pytest.fixture
def game_4v4():
    return blotto_game(4, 4)


@pytest.fixture
def game_8v9():
    return blotto_game(8, 9)


def F(*args):
    return Fraction(*args)


_ACCEPTANCE = []


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and report.when == "call":
        _ACCEPTANCE.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _ACCEPTANCE:
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{status}  {name}")
