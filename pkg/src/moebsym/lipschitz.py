"""Lipschitz constants of Möbius maps.

Closed forms exist for the disk maps ``T_a`` and ``T_{a,b}`` in the Euclidean
metric.  For an arbitrary :class:`~moebsym.moebius.MoebiusMap` the constant
is estimated either as the supremum of the local distortion (Euclidean
derivative on the closed disk, spherical derivative on the sphere) or as a
maximum of distance ratios over random pairs, which is a lower bound.

Both disk maps are hyperbolic isometries, so their Lipschitz constant for
the hyperbolic metric is :data:`HYPERBOLIC_LIPSCHITZ`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence, Union

import numpy as np

from .errors import DomainError
from .moebius import MoebiusMap, disk_automorphism, pair_center
from .plane import INF, ExtendedPoint, check_in_disk

HYPERBOLIC_LIPSCHITZ = 1.0

CIRCLE_BUDGET = 4096
SPHERE_BUDGET = 16384
PAIR_BUDGET = 100_000

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


class Metric(str, Enum):
    EUCLIDEAN = "euclidean"
    CHORDAL = "chordal"


class Method(str, Enum):
    DERIVATIVE = "derivative-sup"
    PAIRS = "pair-sampling"


Witness = Union[ExtendedPoint, tuple]


@dataclass(frozen=True)
class LipschitzEstimate:
    metric: Metric
    value: float
    witness: Witness
    method: Method
    samples: int
    seed: int


def lip_disk_automorphism(a: complex) -> float:
    a = complex(a)
    check_in_disk(a)
    return (1.0 + abs(a)) / (1.0 - abs(a))


def lip_disk_map_pair(a: complex, b: complex) -> float:
    c = abs(pair_center(a, b))
    return (c + 1.0) / (c - 1.0)


def _golden_max(f, lo: float, hi: float, tol: float = 1e-13) -> float:
    """Argmax of a unimodal function on [lo, hi]."""
    x1 = hi - _GOLDEN * (hi - lo)
    x2 = lo + _GOLDEN * (hi - lo)
    f1, f2 = f(x1), f(x2)
    while hi - lo > tol:
        if f1 >= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _GOLDEN * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _GOLDEN * (hi - lo)
            f2 = f(x2)
    return 0.5 * (lo + hi)


def _euclidean_derivative_sup(m: MoebiusMap, budget: int) -> tuple[float, complex]:
    a, b, c, d = m.coeffs
    if abs(d) <= abs(c) * (1.0 + 1e-12):
        raise DomainError("pole in the closed unit disk: Lipschitz constant is unbounded")
    det = abs(m.det)

    # max principle: |f'| = |det|/|cz+d|^2 peaks on the unit circle
    def dist(theta):
        return det / abs(c * np.exp(1j * theta) + d) ** 2

    theta = 2.0 * np.pi * np.arange(budget) / budget
    vals = dist(theta)
    i = int(np.argmax(vals))
    step = 2.0 * np.pi / budget
    best = _golden_max(lambda t: float(dist(t)), theta[i] - step, theta[i] + step)
    value = float(dist(best))
    if value < vals[i]:
        best, value = float(theta[i]), float(vals[i])
    return value, complex(np.exp(1j * best))


def _zoom_max(f, t0: float, p0: float, width: float, n: int = 9, rounds: int = 30):
    """Shrinking-grid local maximization of ``f(theta, phi)`` around a start point."""
    offsets = np.linspace(-1.0, 1.0, n)
    dt, dp = np.meshgrid(offsets, offsets, indexing="ij")
    dt, dp = dt.ravel(), dp.ravel()
    for _ in range(rounds):
        # keep the azimuthal step comparable to the polar one near the poles
        pw = width / max(math.sin(t0), width)
        tt = np.clip(t0 + width * dt, 0.0, np.pi)
        pp = p0 + pw * dp
        j = int(np.argmax(f(tt, pp)))
        t0, p0 = float(tt[j]), float(pp[j])
        width *= 0.4
    return t0, p0


def _sphere_vectors(theta, phi):
    # unit vectors of C^2 representing z = tan(theta/2) e^{i phi}
    return np.sin(theta / 2) * np.exp(1j * phi), np.cos(theta / 2)


def _homog_to_point(z1: complex, z2: complex) -> ExtendedPoint:
    if abs(z2) <= 1e-15 * abs(z1):
        return INF
    return complex(z1 / z2)


def _chordal_derivative_sup(m: MoebiusMap, budget: int) -> tuple[float, ExtendedPoint]:
    a, b, c, d = m.coeffs
    det = abs(m.det)

    def dist(theta, phi):
        # spherical derivative |f'|(1+|z|^2)/(1+|f|^2) in homogeneous form
        z1, z2 = _sphere_vectors(theta, phi)
        return det / (abs(a * z1 + b * z2) ** 2 + abs(c * z1 + d * z2) ** 2)

    k = np.arange(budget) + 0.5
    theta = np.arccos(1.0 - 2.0 * k / budget)
    phi = np.pi * (3.0 - math.sqrt(5.0)) * k
    vals = dist(theta, phi)
    i = int(np.argmax(vals))
    t, p = _zoom_max(dist, float(theta[i]), float(phi[i]), 2.0 * math.sqrt(4.0 * np.pi / budget))
    value = float(dist(t, p))
    if value < vals[i]:
        t, p, value = float(theta[i]), float(phi[i]), float(vals[i])
    z1, z2 = _sphere_vectors(t, p)
    return value, _homog_to_point(complex(z1), complex(z2))


def _euclidean_pairs(m: MoebiusMap, budget: int, rng: np.random.Generator):
    a, b, c, d = m.coeffs
    if abs(d) <= abs(c) * (1.0 + 1e-12):
        raise DomainError("pole in the closed unit disk: Lipschitz constant is unbounded")
    x = np.sqrt(rng.uniform(size=budget)) * np.exp(2j * np.pi * rng.uniform(size=budget))
    step = 10.0 ** rng.uniform(-6.0, 0.0, size=budget)
    y = x + step * np.exp(2j * np.pi * rng.uniform(size=budget))
    y = np.where(np.abs(y) > 1.0, y / np.abs(y), y)
    keep = x != y
    x, y = x[keep], y[keep]

    def f(z):
        return (a * z + b) / (c * z + d)

    ratios = np.abs(f(x) - f(y)) / np.abs(x - y)
    i = int(np.argmax(ratios))
    return float(ratios[i]), (complex(x[i]), complex(y[i]))


def _chordal_pairs(m: MoebiusMap, budget: int, rng: np.random.Generator):
    a, b, c, d = m.coeffs

    def unit(shape):
        v = rng.normal(size=shape + (2,)) + 1j * rng.normal(size=shape + (2,))
        return v / np.linalg.norm(v, axis=-1, keepdims=True)

    u = unit((budget,))
    scale = 10.0 ** rng.uniform(-6.0, 0.0, size=(budget, 1))
    v = u + scale * unit((budget,))
    v /= np.linalg.norm(v, axis=-1, keepdims=True)

    def chord(p, q):
        # q(z, w) for z = p0/p1, w = q0/q1 with |p| = |q| = 1
        return np.abs(p[:, 0] * q[:, 1] - p[:, 1] * q[:, 0])

    def image(p):
        w = np.stack([a * p[:, 0] + b * p[:, 1], c * p[:, 0] + d * p[:, 1]], axis=-1)
        return w / np.linalg.norm(w, axis=-1, keepdims=True)

    base = chord(u, v)
    keep = base > 0
    ratios = chord(image(u[keep]), image(v[keep])) / base[keep]
    i = int(np.argmax(ratios))
    uu, vv = u[keep][i], v[keep][i]
    return float(ratios[i]), (_homog_to_point(*uu), _homog_to_point(*vv))


def estimate_lipschitz(
    m: MoebiusMap,
    metric: Metric | str = Metric.EUCLIDEAN,
    budget: Optional[int] = None,
    seed: int = 0,
    method: Method | str = Method.DERIVATIVE,
) -> LipschitzEstimate:
    """Numerical Lipschitz constant of ``m`` on the closed unit disk or on the sphere.

    Conjugation is an isometry of both metrics, so sense-reversing maps are
    treated through their coefficient matrix alone.
    """
    metric, method = Metric(metric), Method(method)
    if method is Method.DERIVATIVE:
        n = budget or (CIRCLE_BUDGET if metric is Metric.EUCLIDEAN else SPHERE_BUDGET)
        if metric is Metric.EUCLIDEAN:
            value, witness = _euclidean_derivative_sup(m, n)
        else:
            value, witness = _chordal_derivative_sup(m, n)
    else:
        n = budget or PAIR_BUDGET
        rng = np.random.default_rng(seed)
        if metric is Metric.EUCLIDEAN:
            value, witness = _euclidean_pairs(m, n, rng)
        else:
            value, witness = _chordal_pairs(m, n, rng)
    return LipschitzEstimate(metric, value, witness, method, n, seed)


def default_grid(step: float = 0.05, radius: float = 0.95) -> list[complex]:
    """Lattice points ``step * (i + j i)`` inside ``|a| <= radius``."""
    n = int(round(radius / step))
    grid = []
    for i in range(-n, n + 1):
        for j in range(-n, n + 1):
            a = complex(i * step, j * step)
            if abs(a) <= radius + 1e-12:
                grid.append(a)
    return grid


@dataclass(frozen=True)
class SweepRow:
    a: complex
    analytic: float
    empirical: float
    gap: float


@dataclass(frozen=True)
class SweepResult:
    rows: list[SweepRow] = field(default_factory=list)
    budget: int = SPHERE_BUDGET
    seed: int = 0

    @property
    def max_gap(self) -> float:
        return max((r.gap for r in self.rows), default=0.0)


def conjecture_sweep(
    grid: Optional[Sequence[complex]] = None, budget: Optional[int] = None, seed: int = 0
) -> SweepResult:
    """Compare the chordal Lipschitz estimate of ``T_a`` with ``(1+|a|)/(1-|a|)``."""
    grid = default_grid() if grid is None else [complex(a) for a in grid]
    n = budget or SPHERE_BUDGET
    rows = []
    for a in grid:
        if abs(a) > 0.95 + 1e-12:
            raise DomainError(f"grid point {a} has |a| > 0.95")
        analytic = lip_disk_automorphism(a)
        est = estimate_lipschitz(disk_automorphism(a), Metric.CHORDAL, n, seed)
        rows.append(SweepRow(a, analytic, est.value, abs(est.value - analytic) / analytic))
    return SweepResult(rows, n, seed)
