"""Shared fixtures."""
import pytest
from hypothesis import settings

from tokenswap.generators import complete_graph, cycle_graph, path_graph, star_graph

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture
def p3():
    return path_graph(3)


@pytest.fixture
def c7():
    return cycle_graph(7)


@pytest.fixture
def k4():
    return complete_graph(4)


@pytest.fixture
def star5():
    return star_graph(5)


def pytest_terminal_summary(terminalreporter):
    from acceptance_report import LINES

    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(LINES):
            terminalreporter.write_line(line)
