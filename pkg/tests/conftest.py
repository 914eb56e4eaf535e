import cmath
import math

import numpy as np
import pytest

from moebsym.moebius import MoebiusMap

SEED = 20261015


@pytest.fixture
def rng():
    return np.random.default_rng(SEED)


def disk_point(rng, rmax=0.95, rmin=0.0):
    r = math.sqrt(rng.uniform(rmin**2, rmax**2))
    return complex(r * cmath.exp(2j * math.pi * rng.uniform()))


def plane_point(rng, scale=3.0):
    return complex(rng.normal(scale=scale), rng.normal(scale=scale))


def random_map(rng, reversing=None):
    while True:
        coeffs = [plane_point(rng, 1.0) for _ in range(4)]
        a, b, c, d = coeffs
        if abs(a * d - b * c) > 0.1:
            break
    if reversing is None:
        reversing = bool(rng.integers(2))
    return MoebiusMap(*coeffs, reversing=reversing)


def ordered_circle_quad(rng, min_gap=0.05):
    """Four unit-circle points in counterclockwise order with angular gaps >= min_gap."""
    while True:
        start = rng.uniform(0, 2 * math.pi)
        gaps = rng.dirichlet(np.ones(4)) * 2 * math.pi
        if gaps.min() >= min_gap:
            break
    angles = start + np.concatenate([[0.0], np.cumsum(gaps[:3])])
    return tuple(cmath.exp(1j * t) for t in angles)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
