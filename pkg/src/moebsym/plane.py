"""Points of the extended complex plane and the metrics used on it.

Finite points are plain Python ``complex`` values; the point at infinity is
the singleton :data:`INF`.  Three metrics are provided: the Euclidean one
(``abs``), the hyperbolic metric of the unit disk and the chordal metric of
the Riemann sphere of diameter one.
"""

from __future__ import annotations

import cmath
import math
from typing import NamedTuple, Union

from .errors import DegeneracyError, DomainError

DISK_TOL = 1e-12


class Infinity:
    """The point at infinity.  Only one instance exists."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __reduce__(self):
        return (Infinity, ())

    def conjugate(self):
        return self


INF = Infinity()

ExtendedPoint = Union[complex, Infinity]


def is_inf(z) -> bool:
    return z is INF


def as_point(z) -> ExtendedPoint:
    """Coerce numbers to ``complex``; reject NaN and non-finite parts."""
    if z is INF:
        return INF
    try:
        w = complex(z)
    except (TypeError, ValueError) as exc:
        raise DomainError(f"not a point: {z!r}") from exc
    if not cmath.isfinite(w):
        raise DomainError(f"point has non-finite components: {z!r}")
    return w


def check_in_disk(*points: complex) -> None:
    for z in points:
        if z is INF or abs(z) > 1.0 - DISK_TOL:
            raise DomainError(f"point {z!r} is not inside the unit disk")


class SpherePoint(NamedTuple):
    """A point on the sphere centred at (0, 0, 1/2) with radius 1/2."""

    x: float
    y: float
    z: float

    def distance(self, other: "SpherePoint") -> float:
        return math.dist(self, other)


NORTH_POLE = SpherePoint(0.0, 0.0, 1.0)


def stereographic_projection(z: ExtendedPoint) -> SpherePoint:
    z = as_point(z)
    if z is INF:
        return NORTH_POLE
    s = 1.0 + abs(z) ** 2
    # e3 + (z - e3) / |z - e3|^2, componentwise
    return SpherePoint(z.real / s, z.imag / s, 1.0 - 1.0 / s)


def chordal_distance(x: ExtendedPoint, y: ExtendedPoint) -> float:
    x, y = as_point(x), as_point(y)
    if x is INF and y is INF:
        return 0.0
    if x is INF:
        return 1.0 / math.sqrt(1.0 + abs(y) ** 2)
    if y is INF:
        return 1.0 / math.sqrt(1.0 + abs(x) ** 2)
    return abs(x - y) / (math.sqrt(1.0 + abs(x) ** 2) * math.sqrt(1.0 + abs(y) ** 2))


def ahlfors_bracket(x: complex, y: complex) -> float:
    """``|1 - x conj(y)|`` for two points of the unit disk."""
    check_in_disk(x, y)
    return abs(1.0 - x * y.conjugate())


def hyperbolic_distance(x: complex, y: complex) -> float:
    """Distance in the Poincaré disk of curvature -1."""
    x, y = complex(x), complex(y)
    th = abs(x - y) / ahlfors_bracket(x, y)
    return 2.0 * math.atanh(th)


def hyperbolic_distance_sh(x: complex, y: complex) -> float:
    """The same distance evaluated through the ``sinh`` form."""
    x, y = complex(x), complex(y)
    check_in_disk(x, y)
    sh = abs(x - y) / math.sqrt((1.0 - abs(x) ** 2) * (1.0 - abs(y) ** 2))
    return 2.0 * math.asinh(sh)


def absolute_ratio(a: ExtendedPoint, b: ExtendedPoint, c: ExtendedPoint, d: ExtendedPoint) -> float:
    """``|a-c||b-d| / (|a-b||c-d|)``; an infinite point cancels its two factors."""
    pts = [as_point(p) for p in (a, b, c, d)]
    n_inf = sum(p is INF for p in pts)
    if n_inf > 1:
        raise DegeneracyError("absolute ratio needs four distinct points")
    finite = [p for p in pts if p is not INF]
    for i in range(len(finite)):
        for j in range(i + 1, len(finite)):
            if finite[i] == finite[j]:
                raise DegeneracyError("absolute ratio needs four distinct points")

    def dist(p, q):
        # factors touching infinity cancel pairwise (one in each of num/den)
        if p is INF or q is INF:
            return 1.0
        return abs(p - q)

    a, b, c, d = pts
    return dist(a, c) * dist(b, d) / (dist(a, b) * dist(c, d))
