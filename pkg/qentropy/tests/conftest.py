"""
Shared fixtures: the bundled price table, its windows and small test states.
"""

import math

import numpy as np
import pytest

from qentropy.core.market import (
    build_return_panel,
    bundled_prices_path,
    correlation_matrix,
    data_statevector,
    read_prices_csv,
)
from qentropy.core.sim import StateVector
from qentropy.harness.windows import enumerate_windows

INV_SQRT2 = 1.0 / math.sqrt(2.0)


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: full-scale multi-seed calibration runs")


@pytest.fixture(scope="session")
def price_table():
    return read_prices_csv(bundled_prices_path())


@pytest.fixture(scope="session")
def windows(price_table):
    return enumerate_windows(price_table, 5)


@pytest.fixture(scope="session")
def window_panels(price_table, windows):
    panels = []
    for window in windows:
        sub_table = price_table.window(window)
        panels.append(build_return_panel(sub_table.all_series(), sub_table.dates))
    return panels


@pytest.fixture(scope="session")
def window_correlations(window_panels):
    return [correlation_matrix(p) for p in window_panels]


@pytest.fixture(scope="session")
def window_targets(window_panels):
    return [data_statevector(p) for p in window_panels]


@pytest.fixture
def plus_state():
    return StateVector.from_amplitudes([INV_SQRT2, INV_SQRT2])


@pytest.fixture
def minus_state():
    return StateVector.from_amplitudes([INV_SQRT2, -INV_SQRT2])


@pytest.fixture
def bell_state():
    """(|00> + |11>) / sqrt(2)."""
    return StateVector.from_amplitudes([INV_SQRT2, 0.0, 0.0, INV_SQRT2])


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
