"""Möbius maps that move point configurations into symmetric position.

* :func:`symmetrize_quadruple` sends four points to ``-1, y, -y, 1``;
* :func:`normalize_pair` moves two disk points to an antipodal, radial or
  equal-modulus position;
* :func:`symmetrize_circle_quadruple` symmetrizes four points of the unit
  circle by a disk automorphism.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .errors import DegeneracyError, DomainError
from .geometry import (
    QuadCirclePoints,
    circle_quad_points,
    collinear_with_origin,
    hyperbolic_midpoint,
    nearest_geodesic_point,
)
from .lipschitz import lip_disk_automorphism, lip_disk_map_pair
from .moebius import (
    MoebiusMap,
    apply,
    disk_automorphism,
    disk_map_pair,
    from_three_points,
)
from .plane import INF, ExtendedPoint, check_in_disk

LINEAR_TOL = 1e-10
TIE_TOL = 1e-12


class Branch(str, Enum):
    LINEAR = "linear"
    GENERIC = "generic"


class PairMode(str, Enum):
    ANTIPODAL = "antipodal"
    COLLINEAR = "collinear"
    EQUINORM = "equinorm"


class CircleMethod(str, Enum):
    REFLECTION = "reflection"
    ANTIPODAL = "antipodal"


@dataclass(frozen=True)
class QuadSymmetrization:
    map: MoebiusMap
    y: complex
    branch: Branch
    center: ExtendedPoint
    p: Optional[complex] = None
    q: Optional[complex] = None
    s: Optional[complex] = None
    k0: Optional[complex] = None
    k1: Optional[complex] = None

    def images(self, a, b, c, d) -> tuple:
        return tuple(apply(self.map, z) for z in (a, b, c, d))


@dataclass(frozen=True)
class PairNormalization:
    mode: PairMode
    map: MoebiusMap
    h_ab: complex
    k: complex
    lip: float
    images: tuple[complex, complex]


@dataclass(frozen=True)
class CircleQuadSymmetrization:
    method: CircleMethod
    map: MoebiusMap
    points: QuadCirclePoints
    lip: float
    images: tuple[complex, complex, complex, complex]
    axis: Optional[float] = None  # angle of the symmetry line, reflection method only


def _check_distinct(points) -> None:
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            if points[i] == points[j]:
                raise DegeneracyError("the four points must be distinct")


def y_roots(a: complex, b: complex, c: complex, d: complex) -> tuple[complex, complex, complex, complex]:
    """Roots of ``k0 y**2 + 2 k1 y + k0 = 0`` as ``(inner, outer, k0, k1)``.

    ``|inner| <= 1 <= |outer|`` and ``inner * outer == 1``.  When both roots
    are unimodular the one with nonnegative imaginary part is ``inner``.
    """
    k0 = (b - c) * (a - d)
    k1 = (a - c) * (b - d) + (a - b) * (c - d)
    assert k0 != 0
    disc = cmath.sqrt(k1 * k1 - k0 * k0)
    if abs(-k1 - disc) < abs(-k1 + disc):
        disc = -disc
    outer = (-k1 - disc) / k0
    inner = k0 / (k0 * outer)
    if abs(abs(inner) - 1.0) <= TIE_TOL and inner.imag < 0:
        inner, outer = outer, inner
    return inner, outer, k0, k1


def _closed_form_coefficients(a, b, c, d, y):
    """p, q, s of ``h(z) = (p z + q)/(z + s)``, or ``None`` if a divisor vanishes."""
    scale = max(abs(a), abs(b), abs(c), abs(d), 1.0)
    den_pq = a - b - c + d
    den_s = (a - d) * y + (b - c)
    if abs(den_pq) <= 1e-8 * scale or abs(den_s) <= 1e-8 * scale:
        return None
    p = -((b - c) * y + a - d) / den_pq
    q = ((b - c) * (a + d) * y + (b + c) * (a - d)) / (2 * den_pq)
    s = -((b + c) * (a - d) * y + (b - c) * (a + d)) / (2 * den_s)
    return p, q, s


def _center_formula(a, b, c, d, y) -> ExtendedPoint:
    num = (b - c) * (a + d) * y + (b + c) * (a - d)
    den = 2 * ((b - c) * y + a - d)
    if abs(den) <= 1e-14 * max(abs(num), 1.0):
        return INF
    return num / den


def symmetrize_quadruple(a: complex, b: complex, c: complex, d: complex) -> QuadSymmetrization:
    """Möbius map sending a, b, c, d to -1, y, -y, 1 with ``|y| <= 1``."""
    a, b, c, d = (complex(z) for z in (a, b, c, d))
    _check_distinct((a, b, c, d))
    y, _, k0, k1 = y_roots(a, b, c, d)
    scale = max(abs(a), abs(b), abs(c), abs(d))

    if abs(a + d - b - c) <= LINEAR_TOL * scale:
        y_affine = (c - b) / (a - d)
        if abs(y_affine - y) <= 1e-9 * max(1.0, abs(y)):
            h = MoebiusMap(-2.0, a + d, 0, a - d)
            return QuadSymmetrization(h, y_affine, Branch.LINEAR, (a + d) / 2)

    coeffs = _closed_form_coefficients(a, b, c, d, y)
    if coeffs is not None:
        p, q, s = coeffs
        h = MoebiusMap(p, q, 1, s)
    else:
        # closed-form divisors vanish (e.g. a + d = b + c with the non-affine root)
        h = from_three_points((a, b, d), (-1, y, 1))
        p, q, s = h.a / h.c, h.b / h.c, h.d / h.c
    center = _center_formula(a, b, c, d, y)
    return QuadSymmetrization(h, y, Branch.GENERIC, center, p, q, s, k0, k1)


def moebius_center(a: complex, b: complex, c: complex, d: complex) -> ExtendedPoint:
    """The point sent to the origin by the map of :func:`symmetrize_quadruple`."""
    return symmetrize_quadruple(a, b, c, d).center


def symmetrize_special(x: complex) -> tuple[float, float, float]:
    """``(|y|, |y + 1|**2, t)`` for the map taking 0, 1, x, inf to -1, y, -y, 1."""
    x = complex(x)
    if x == 0 or x == 1:
        raise DegeneracyError("x must differ from 0 and 1")
    t = math.sqrt(max((1 + abs(x)) ** 2 - abs(x - 1) ** 2, 0.0))
    abs_y = abs(x - 1) / (1 + abs(x) + t)
    return abs_y, 4.0 / (1 + abs(x) + t), t


def normalize_pair(a: complex, b: complex, mode: PairMode | str) -> PairNormalization:
    mode = PairMode(mode)
    a, b = complex(a), complex(b)
    check_in_disk(a, b)
    if a == b:
        raise DegeneracyError("a and b coincide")
    h = hyperbolic_midpoint(a, b)
    k = nearest_geodesic_point(a, b)

    if mode is PairMode.ANTIPODAL:
        m = disk_automorphism(h)
        lip = lip_disk_automorphism(h)
    elif mode is PairMode.COLLINEAR:
        m = disk_automorphism(k)
        lip = lip_disk_automorphism(k)
    else:
        if k == 0 or collinear_with_origin(a, b):
            raise DomainError("a, b and 0 are collinear: equal-modulus normalization is ill-posed")
        if h == 0 or abs(abs(h) - abs(k)) <= 1e-14:
            raise DomainError("T_{h_ab,k} needs h_ab != 0 and |h_ab| != |k|")
        m = disk_map_pair(h, k)
        lip = lip_disk_map_pair(h, k)
    return PairNormalization(mode, m, h, k, lip, (m(a), m(b)))


def reflection_axis(points, tol: float = 1e-9) -> Optional[float]:
    """Angle of a line through 0 whose reflection permutes ``points``, if any.

    The points are assumed to lie on the unit circle, so the reflection
    ``z -> e**(2i theta) conj(z)`` swapping u and v has ``e**(2i theta) = u v``.
    """
    pts = [complex(z) for z in points]
    candidates = sorted(
        {(i, j) for i in range(len(pts)) for j in range(i, len(pts))}
    )
    for i, j in candidates:
        rot = pts[i] * pts[j]
        rot /= abs(rot)
        mirrored = [rot * z.conjugate() for z in pts]
        unused = list(range(len(pts)))
        for w in mirrored:
            hit = next((n for n in unused if abs(pts[n] - w) <= tol), None)
            if hit is None:
                break
            unused.remove(hit)
        else:
            return (cmath.phase(rot) / 2) % math.pi
    return None


def symmetrize_circle_quadruple(
    a: complex, b: complex, c: complex, d: complex, method: CircleMethod | str
) -> CircleQuadSymmetrization:
    method = CircleMethod(method)
    pts = circle_quad_points(a, b, c, d)
    quad = tuple(complex(z) for z in (a, b, c, d))
    if method is CircleMethod.ANTIPODAL:
        m = disk_automorphism(pts.w4)
        lip = lip_disk_automorphism(pts.w4)
        images = tuple(m(z) for z in quad)
        return CircleQuadSymmetrization(method, m, pts, lip, images)

    if pts.w4 == 0 or abs(abs(pts.w4) - abs(pts.w5)) <= 1e-14:
        raise DomainError("T_{w4,w5} needs w4 != 0 and |w4| != |w5|")
    m = disk_map_pair(pts.w4, pts.w5)
    lip = lip_disk_map_pair(pts.w4, pts.w5)
    images = tuple(m(z) for z in quad)
    return CircleQuadSymmetrization(method, m, pts, lip, images, reflection_axis(images))
