"""Euclidean and hyperbolic constructions in the plane and the unit disk."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegeneracyError, DomainError
from .moebius import disk_automorphism
from .plane import INF, ExtendedPoint, ahlfors_bracket, check_in_disk

COLLINEAR_TOL = 1e-12


def _cross(u: complex, v: complex) -> float:
    return (u.conjugate() * v).imag


def collinear_with_origin(a: complex, b: complex, tol: float = COLLINEAR_TOL) -> bool:
    return abs(_cross(a, b)) <= tol * max(abs(a) * abs(b), tol)


@dataclass(frozen=True)
class OrthoCircle:
    """A circle meeting the unit circle at right angles."""

    center: complex
    radius: float

    def arc(self, n: int = 128) -> np.ndarray:
        """``n + 1`` points on the part of the circle inside the unit disk."""
        t = abs(self.center)
        half = math.acos(min(1.0, self.radius / t))
        mid = cmath.phase(-self.center)
        angles = np.linspace(mid - half, mid + half, n + 1)
        return self.center + self.radius * np.exp(1j * angles)


@dataclass(frozen=True)
class QuadCirclePoints:
    w1: ExtendedPoint
    w2: ExtendedPoint
    w3: ExtendedPoint
    w4: complex
    w5: complex

    @property
    def w1_circle(self) -> OrthoCircle:
        if self.w1 is INF:
            raise DegeneracyError("w1 is at infinity")
        return OrthoCircle(self.w1, math.sqrt(abs(self.w1) ** 2 - 1.0))


def line_intersection(a: complex, b: complex, c: complex, d: complex) -> ExtendedPoint:
    """Common point of the lines L(a, b) and L(c, d); ``INF`` when parallel."""
    a, b, c, d = (complex(z) for z in (a, b, c, d))
    if a == b or c == d:
        raise DegeneracyError("a line needs two distinct points")
    conj = complex.conjugate
    num = (conj(a) * b - a * conj(b)) * (c - d) - (conj(c) * d - c * conj(d)) * (a - b)
    den = (conj(a) - conj(b)) * (c - d) - (conj(c) - conj(d)) * (a - b)
    scale = abs(a - b) * abs(c - d)
    if abs(den) <= 1e-14 * scale:
        if abs(_cross(b - a, c - a)) <= 1e-12 * abs(b - a) * max(abs(c - a), 1.0):
            raise DegeneracyError("the two lines coincide")
        return INF
    return num / den


def lis_star_variants(a: complex, b: complex) -> tuple[complex, complex, complex, complex]:
    """Closed forms for the intersections of lines through a, b and their reflections.

    Returns, in order, LIS[a, b, -1/conj(a), -1/conj(b)], LIS[a, b, 1/conj(a), 1/conj(b)],
    LIS[a, 1/conj(b), b, 1/conj(a)] and LIS[a, -1/conj(b), b, -1/conj(a)].
    """
    a, b = complex(a), complex(b)
    if a == 0 or b == 0:
        raise DomainError("points must be nonzero")
    na, nb = abs(a) ** 2, abs(b) ** 2
    if abs(na - nb) <= 1e-14 or abs(na * nb - 1.0) <= 1e-14:
        raise DomainError("need |a| != |b| and |a||b| != 1")
    v1 = (b * (1 + na) - a * (1 + nb)) / (na - nb)
    v2 = (a * (1 - nb) - b * (1 - na)) / (na - nb)
    v3 = (a * (1 - nb) + b * (1 - na)) / (1 - na * nb)
    v4 = (a * (1 + nb) + b * (1 + na)) / (1 - na * nb)
    return v1, v2, v3, v4


def chord_endpoints(a: complex, b: complex) -> tuple[complex, complex]:
    """Where the line L(a, b) meets the unit circle, ``a1`` on the side of ``a``."""
    a, b = complex(a), complex(b)
    check_in_disk(a, b)
    if a == b:
        raise DegeneracyError("a and b coincide")
    if collinear_with_origin(a, b):
        raise DomainError("a, b and 0 are collinear")
    c = line_intersection(a, b, 0, 1j * (a - b))
    assert abs(c) < 1.0
    step = 1j * (c / abs(c)) * math.sqrt(1.0 - abs(c) ** 2)
    a1, b1 = c - step, c + step
    if abs(a1 - a) >= abs(a1 - b):
        a1, b1 = b1, a1
    return a1, b1


def hyperbolic_midpoint(x: complex, y: complex) -> complex:
    x, y = complex(x), complex(y)
    sx, sy = 1.0 - abs(x) ** 2, 1.0 - abs(y) ** 2
    bracket = ahlfors_bracket(x, y)
    return (y * sx + x * sy) / (1.0 - abs(x) ** 2 * abs(y) ** 2 + bracket * math.sqrt(sx * sy))


def chordal_midpoint_parts(a: complex, b: complex) -> tuple[complex, float]:
    """Numerator and (real) denominator of the chordal midpoint formula."""
    a, b = complex(a), complex(b)
    root = math.sqrt((1 + abs(a) ** 2) * (1 + abs(b) ** 2))
    u = abs(1 + a * b.conjugate())
    ab2 = abs(a * b) ** 2
    num = a * (1 + abs(b) ** 2) + b * (1 + abs(a) ** 2)
    if u <= 1e-12 * root:
        raise DegeneracyError("antipodal points on the sphere: the chordal midpoint is not unique")
    den = u * root - ab2 + 1.0
    scale = u * root + ab2 + 1.0
    if abs(num) <= 1e-12 * scale and abs(den) <= 1e-12 * scale:
        # a = -b with |a| > 1: the formula is 0/0, the midpoint is inf
        return a / abs(a), 0.0
    return num, den


def chordal_midpoint(a: complex, b: complex) -> ExtendedPoint:
    num, den = chordal_midpoint_parts(a, b)
    if abs(den) <= 1e-12 * abs(num):
        return INF
    return num / den


def _circumcenter(p1: complex, p2: complex, p3: complex) -> complex:
    m = 2.0 * np.array(
        [[(p2 - p1).real, (p2 - p1).imag], [(p3 - p1).real, (p3 - p1).imag]]
    )
    rhs = np.array([abs(p2) ** 2 - abs(p1) ** 2, abs(p3) ** 2 - abs(p1) ** 2])
    x, y = np.linalg.solve(m, rhs)
    return complex(x, y)


def ortho_circle(a: complex, b: complex) -> OrthoCircle:
    """The circle through ``a`` and ``b`` orthogonal to the unit circle."""
    a, b = complex(a), complex(b)
    check_in_disk(a, b)
    if a == b:
        raise DegeneracyError("a and b coincide")
    if a == 0 or b == 0 or collinear_with_origin(a, b):
        raise DegeneracyError("geodesic through a and b is a diameter")
    center = _circumcenter(a, b, a / abs(a) ** 2)
    return OrthoCircle(center, abs(center - a))


def boundary_ortho_circle(p: complex, q: complex) -> OrthoCircle:
    """Orthogonal circle through two distinct unit-circle points ``p`` and ``q``."""
    p, q = complex(p), complex(q)
    # |z - p| = |z - q| and |z|^2 = 1 + |z - p|^2, i.e. Re(z conj p) = Re(z conj q) = 1
    m = np.array([[p.real, p.imag], [q.real, q.imag]])
    if abs(np.linalg.det(m)) <= 1e-12:
        raise DegeneracyError("p and q are antipodal or equal: the geodesic is a diameter")
    x, y = np.linalg.solve(m, np.array([1.0, 1.0]))
    center = complex(x, y)
    return OrthoCircle(center, abs(center - p))


def nearest_geodesic_point(a: complex, b: complex) -> complex:
    """Point of the hyperbolic line through a and b closest to the origin."""
    a, b = complex(a), complex(b)
    check_in_disk(a, b)
    if a == b:
        raise DegeneracyError("a and b coincide")
    if a == 0 or b == 0 or collinear_with_origin(a, b):
        return 0j
    o = ortho_circle(a, b).center
    t = abs(o)
    return o / t * (t - math.sqrt(t * t - 1.0))


def geodesic_endpoints(x: complex, y: complex) -> tuple[complex, complex]:
    """``(ep(x, y), ep(y, x))``: the ends of the hyperbolic line, ``x`` side first."""
    x, y = complex(x), complex(y)
    check_in_disk(x, y)
    if x == y:
        raise DegeneracyError("x and y coincide")

    def ep(u, v):
        w = disk_automorphism(v)(u)
        return disk_automorphism(-v)(w / abs(w))

    return ep(x, y), ep(y, x)


def on_unit_circle(z: complex, tol: float = 1e-9) -> bool:
    return abs(abs(z) - 1.0) <= tol


def check_positive_order(a: complex, b: complex, c: complex, d: complex) -> None:
    pts = (a, b, c, d)
    if not all(on_unit_circle(z) for z in pts):
        raise DomainError("all four points must lie on the unit circle")
    rot = [(z / a) for z in pts]
    args = [cmath.phase(z) % (2 * math.pi) for z in rot]
    args[0] = 0.0
    if not (args[0] < args[1] < args[2] < args[3] < 2 * math.pi):
        raise DomainError("points must be distinct and in positive (counterclockwise) order")


def orthogonal_arcs_intersection(a: complex, b: complex, c: complex, d: complex) -> complex:
    """Where the hyperbolic lines J*[a, c] and J*[b, d] cross, for unit-circle points."""
    p = a * c - b * d
    disc = cmath.sqrt((a - b) * (b - c) * (c - d) * (d - a))
    if abs(p + disc) < abs(p - disc):
        disc = -disc
    # the two roots (p +- disc)/(a - b + c - d) are reflections of each other in
    # the unit circle; (p**2 - disc**2)/(a - b + c - d) = abc - abd + acd - bcd,
    # so the inner root is evaluated without the vanishing denominator
    prod = a * b * c - a * b * d + a * c * d - b * c * d
    return prod / (p + disc)


def circle_quad_points(a: complex, b: complex, c: complex, d: complex) -> QuadCirclePoints:
    a, b, c, d = (complex(z) for z in (a, b, c, d))
    check_positive_order(a, b, c, d)
    w1 = line_intersection(a, b, c, d)
    if w1 is not INF and abs(w1) <= 1.0:
        raise DegeneracyError("L(a, b) and L(c, d) do not meet outside the unit disk")
    w2 = line_intersection(a, c, b, d)
    w3 = line_intersection(a, d, b, c)
    w4 = orthogonal_arcs_intersection(a, b, c, d)
    if w1 is INF:
        # parallel chords: the arc around w1 flattens to a diameter
        w5 = 0j
    else:
        r = math.sqrt(abs(w1) ** 2 - 1.0)
        w5 = w1 / abs(w1) * (abs(w1) - r)
    return QuadCirclePoints(w1, w2, w3, w4, w5)
