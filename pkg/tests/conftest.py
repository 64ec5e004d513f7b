import numpy as np
import pytest

from sonquot import sampling


@pytest.fixture
def gen():
    return sampling.rng(12345)


def maxabs(a) -> float:
    return float(np.max(np.abs(np.asarray(a, dtype=float))))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
