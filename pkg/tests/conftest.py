import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from numrad.rng import SplitMix64

settings.register_profile(
    "numrad", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("numrad")

JORDAN = np.array([[0, 1], [0, 0]], dtype=complex)


@pytest.fixture
def stream():
    return SplitMix64(20240601)


@pytest.fixture
def jordan():
    return JORDAN.copy()


# one line per acceptance criterion, echoed after the run
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE):
            terminalreporter.write_line(line)
