import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_acceptance = []


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): exit criterion, reported in the summary")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker and report.when == "call":
        _acceptance.append((marker.args[0], marker.args[1], report.passed))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed in sorted(_acceptance):
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] {number}. {title}")


ES_INVENTORY = ["a", "b", "d", "e", "g", "i", "k", "l", "m", "n", "o", "p", "r", "s", "t", "u"]
FR_INVENTORY = ["a", "aa", "b", "d", "e", "eh", "l", "m", "n", "o", "r", "s", "t", "u", "uy", "z"]
AR_INVENTORY = ["a", "aa", "b", "d", "h", "k", "l", "m", "n", "q", "r", "s", "t", "u", "w", "y"]
TR_INVENTORY = ["a", "b", "c", "d", "e", "g", "i", "k", "l", "m", "n", "o", "oe", "r", "s", "ue"]


@pytest.fixture
def inventories():
    return {"AR": AR_INVENTORY, "ES": ES_INVENTORY, "FR": FR_INVENTORY, "TR": TR_INVENTORY}
