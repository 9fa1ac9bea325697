import os
import sys

import pytest
from hypothesis import HealthCheck, settings

from avoidkit.graphs import Graph

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def x6() -> Graph:
    """Path 0-1-2-3-4 plus vertex 5 joined to 2 and 3."""
    return Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (5, 2), (5, 3)])


@pytest.fixture
def X6():
    return x6()


# filled in by test_acceptance.py; printed after the run
ACCEPTANCE_LINES: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])
