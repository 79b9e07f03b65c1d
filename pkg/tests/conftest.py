import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from osculant.geometry import SamplePlan  # noqa: E402


@pytest.fixture
def plan():
    return SamplePlan(seed=42, samples=5, height_bound=1000)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[number])
