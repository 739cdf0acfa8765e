import numpy as np
import pytest
from helpers import R2, criteria

from gruss import WeightedSpace


def pytest_terminal_summary(terminalreporter):
    if criteria:
        terminalreporter.section("acceptance criteria")
        for line in criteria:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20030312)


@pytest.fixture
def plane():
    """R^2 with the unit vector (1, 1)/sqrt(2)."""
    space = WeightedSpace.euclidean(2)
    return space, space.vector([R2, R2])
