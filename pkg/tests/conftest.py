from functools import cache

import pytest

from ringelhall.cartan import load_quiver
from ringelhall.repfq import RepCategory

ACCEPTANCE_LINES = []


@cache
def category(name, q):
    """Shared category per (preset, q); building indecomposables is the slow part."""
    return RepCategory(load_quiver(name), q)


@pytest.fixture
def a2():
    return category("a2", 2)


@pytest.fixture
def a2q3():
    return category("a2", 3)


@pytest.fixture
def a3():
    return category("a3", 2)


@pytest.fixture
def b2():
    return category("b2", 2)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
