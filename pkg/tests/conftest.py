import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from motorfit.motor_model import CircuitParams
from motorfit.objective import SearchBounds
from motorfit.reference import PUBLISHED_PARAMS, TEST_MOTOR

DATA = Path(__file__).resolve().parents[1] / "data"


@pytest.fixture
def nameplate():
    return TEST_MOTOR


@pytest.fixture
def pamp():
    return PUBLISHED_PARAMS["pamp"]


@pytest.fixture
def abc_params():
    return PUBLISHED_PARAMS["abc"]


@pytest.fixture
def data_dir():
    return DATA


def random_feasible(rng, n, bounds=None):
    """Parameter vectors inside the default bounds with r_2 > r_1 and x_1d > x_2d."""
    b = bounds or SearchBounds.default()
    x = rng.uniform(b.lo, b.hi, (n, 7))
    r = np.sort(x[:, [3, 5]], axis=1)
    xl = np.sort(x[:, [4, 6]], axis=1)
    x[:, 3], x[:, 5] = r[:, 0], r[:, 1]
    x[:, 4], x[:, 6] = xl[:, 1], xl[:, 0]
    keep = (x[:, 5] > x[:, 3]) & (x[:, 4] > x[:, 6])
    return [CircuitParams.from_array(v) for v in x[keep]]


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
