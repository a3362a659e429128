"""Shared fixtures and independent numerical oracles."""

from __future__ import annotations

import csv
import math
import sys
import time
from pathlib import Path

import numpy as np
import pytest

from gup.dynamics import PendulumConfig
from gup.evfit import MeasurementSeries

DATA = Path(__file__).resolve().parent.parent / "src" / "gup" / "data"

_SESSION_START = time.perf_counter()

# filled by the acceptance tests, replayed after the short summary where
# capture can no longer swallow it
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    elapsed = time.perf_counter() - _SESSION_START
    verdict = "PASS" if elapsed < 60.0 else "FAIL"
    lines = ACCEPTANCE_LINES + [
        f"acceptance 10b (suite runtime): {verdict} - {elapsed:.1f}s of 60s budget"
    ]
    terminalreporter.section("acceptance criteria")
    for line in lines:
        terminalreporter.write_line(line)


def agm_elliptic_k(m: float) -> float:
    """Complete elliptic integral K(m) by the arithmetic-geometric mean.

    Uses only +, *, sqrt; entirely independent of scipy.special and of
    the quadrature code under test.
    """
    if not 0.0 <= m < 1.0:
        raise ValueError("parameter m must lie in [0, 1)")
    a, b = 1.0, math.sqrt(1.0 - m)
    for _ in range(40):
        if abs(a - b) <= 2e-16 * a:
            break
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    return math.pi / (2.0 * a)


def agm_pendulum_period(pend: PendulumConfig, phi: float) -> float:
    """Undeformed pendulum period from the AGM elliptic oracle."""
    k2 = math.sin(0.5 * phi) ** 2
    return 4.0 * math.sqrt(pend.length / pend.gravity) * agm_elliptic_k(k2)


@pytest.fixture(scope="session")
def experiment() -> PendulumConfig:
    return PendulumConfig(mass=1.22, length=2.9954, gravity=9.80393)


@pytest.fixture(scope="session")
def timing_rows() -> list[tuple[float, float]]:
    with open(DATA / "pendulum_timing.csv", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        assert header == ["amplitude_sq_cm2", "period_s"]
        return [(float(a), float(t)) for a, t in reader]


@pytest.fixture(scope="session")
def timing_series(timing_rows) -> MeasurementSeries:
    amp_sq_m2 = np.array([a for a, _ in timing_rows]) * 1e-4
    period = np.array([t for _, t in timing_rows])
    return MeasurementSeries(x=amp_sq_m2, y=period, sigma_x=5e-3, sigma_y=1e-4)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20260822)
