import sys

import pytest

from univsub.universality import SearchConfig


@pytest.fixture
def fast():
    """Small search budget for unit tests."""
    return SearchConfig(restarts=16, samples=8, seed=0)


def pytest_terminal_summary(terminalreporter):
    # echo the acceptance lines even when test output is captured
    module = next((m for name, m in sys.modules.items() if name.endswith("test_acceptance")), None)
    lines = getattr(module, "RESULTS", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
