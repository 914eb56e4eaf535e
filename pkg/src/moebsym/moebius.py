"""Plane Möbius transformations and the special disk/sphere maps.

A :class:`MoebiusMap` stores the coefficients of ``z -> (a z + b)/(c z + d)``
scaled so that ``a d - b c = 1``, plus a flag for the sense-reversing variant
``z -> (a conj(z) + b)/(c conj(z) + d)``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegeneracyError, DomainError
from .plane import INF, ExtendedPoint, as_point, check_in_disk

POLE_TOL = 1e-14
DET_TOL = 1e-14


@dataclass(frozen=True, eq=False)
class MoebiusMap:
    a: complex
    b: complex
    c: complex
    d: complex
    reversing: bool = False

    def __post_init__(self):
        a, b, c, d = (complex(v) for v in (self.a, self.b, self.c, self.d))
        scale = max(abs(a), abs(b), abs(c), abs(d))
        if scale == 0.0 or not all(cmath.isfinite(v) for v in (a, b, c, d)):
            raise DegeneracyError("Möbius coefficients must be finite and not all zero")
        a, b, c, d = a / scale, b / scale, c / scale, d / scale
        det = a * d - b * c
        if abs(det) <= DET_TOL:
            raise DegeneracyError("Möbius map with vanishing determinant")
        r = cmath.sqrt(det)
        a, b, c, d = a / r, b / r, c / r, d / r
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "reversing", bool(self.reversing))

    @classmethod
    def identity(cls) -> "MoebiusMap":
        return cls(1, 0, 0, 1)

    @classmethod
    def from_matrix(cls, m, reversing: bool = False) -> "MoebiusMap":
        return cls(m[0][0], m[0][1], m[1][0], m[1][1], reversing)

    @property
    def coeffs(self) -> tuple[complex, complex, complex, complex]:
        return (self.a, self.b, self.c, self.d)

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=complex)

    @property
    def det(self) -> complex:
        return self.a * self.d - self.b * self.c

    def __call__(self, z: ExtendedPoint) -> ExtendedPoint:
        return apply(self, z)

    def __matmul__(self, other: "MoebiusMap") -> "MoebiusMap":
        return compose(self, other)

    def __eq__(self, other):
        if not isinstance(other, MoebiusMap):
            return NotImplemented
        return self.isclose(other)

    __hash__ = None

    def isclose(self, other: "MoebiusMap", tol: float = 1e-9) -> bool:
        """Same map up to a global complex factor on the coefficients."""
        if self.reversing != other.reversing:
            return False
        u = np.array(self.coeffs)
        v = np.array(other.coeffs)
        # best phase aligning v to u
        inner = np.vdot(v, u)
        if abs(inner) == 0.0:
            return False
        phase = inner / abs(inner)
        return bool(np.max(np.abs(u - phase * v)) <= tol)

    def __repr__(self):
        kind = "reversing" if self.reversing else "preserving"
        return f"MoebiusMap(a={self.a:.6g}, b={self.b:.6g}, c={self.c:.6g}, d={self.d:.6g}, {kind})"


def apply(m: MoebiusMap, z: ExtendedPoint) -> ExtendedPoint:
    z = as_point(z)
    a, b, c, d = m.coeffs
    if z is INF:
        if abs(c) <= POLE_TOL * abs(a):
            return INF
        return a / c
    if m.reversing:
        z = z.conjugate()
    den = c * z + d
    if abs(den) <= POLE_TOL * (abs(c) * abs(z) + abs(d)):
        return INF
    return (a * z + b) / den


def compose(m1: MoebiusMap, m2: MoebiusMap) -> MoebiusMap:
    """The map ``z -> m1(m2(z))``."""
    right = m2.matrix.conj() if m1.reversing else m2.matrix
    return MoebiusMap.from_matrix(m1.matrix @ right, m1.reversing != m2.reversing)


def inverse(m: MoebiusMap) -> MoebiusMap:
    a, b, c, d = m.coeffs
    inv = np.array([[d, -b], [-c, a]], dtype=complex)
    if m.reversing:
        inv = inv.conj()
    return MoebiusMap.from_matrix(inv, m.reversing)


def from_three_points(z: tuple, w: tuple) -> MoebiusMap:
    """The sense-preserving map sending ``z[i]`` to ``w[i]`` for i = 0, 1, 2."""

    def to_standard(p1, p2, p3):
        # p1 -> 0, p2 -> 1, p3 -> inf
        p1, p2, p3 = (as_point(p) for p in (p1, p2, p3))
        if p1 is INF:
            return np.array([[0, p2 - p3], [1, -p3]], dtype=complex)
        if p2 is INF:
            return np.array([[1, -p1], [1, -p3]], dtype=complex)
        if p3 is INF:
            return np.array([[1, -p1], [0, p2 - p1]], dtype=complex)
        return np.array([[p2 - p3, -p1 * (p2 - p3)], [p2 - p1, -p3 * (p2 - p1)]], dtype=complex)

    s = to_standard(*z)
    t = to_standard(*w)
    t_inv = np.array([[t[1, 1], -t[0, 1]], [-t[1, 0], t[0, 0]]])
    return MoebiusMap.from_matrix(t_inv @ s)


@dataclass(frozen=True)
class Inversion:
    """Inversion in the circle ``|z - center| = radius``."""

    center: complex
    radius: float

    def __post_init__(self):
        if not self.radius > 0:
            raise DomainError("inversion radius must be positive")

    def __call__(self, z: ExtendedPoint) -> ExtendedPoint:
        z = as_point(z)
        if z is INF:
            return self.center
        dz = z - self.center
        if dz == 0:
            return INF
        return self.center + self.radius**2 * dz / abs(dz) ** 2

    def as_moebius(self) -> MoebiusMap:
        v, r2 = self.center, self.radius**2
        return MoebiusMap(v, r2 - abs(v) ** 2, 1, -v.conjugate(), reversing=True)


@dataclass(frozen=True)
class LineReflection:
    """Reflection in the line ``{x : Re(x conj(normal)) = offset}``."""

    normal: complex
    offset: float = 0.0

    def __post_init__(self):
        if abs(abs(self.normal) - 1.0) > 1e-12:
            raise DomainError("line normal must have unit length")

    def __call__(self, z: ExtendedPoint) -> ExtendedPoint:
        z = as_point(z)
        if z is INF:
            return INF
        u = self.normal
        return z - 2.0 * ((z * u.conjugate()).real - self.offset) * u

    def as_moebius(self) -> MoebiusMap:
        u = self.normal
        return MoebiusMap(-(u * u), 2.0 * self.offset * u, 0, 1, reversing=True)


def disk_automorphism(a: complex) -> MoebiusMap:
    """``T_a(z) = (z - a)/(1 - conj(a) z)``, sending ``a`` to the origin."""
    a = complex(a)
    check_in_disk(a)
    return MoebiusMap(1, -a, -a.conjugate(), 1)


def ahlfors_factorization(a: complex) -> tuple[Inversion, LineReflection]:
    """Split ``T_a`` as an inversion followed by a reflection in a diameter."""
    a = complex(a)
    check_in_disk(a)
    if a == 0:
        raise DomainError("T_0 is the identity; it has no such factorization")
    a_star = a / abs(a) ** 2
    sigma = Inversion(a_star, math.sqrt(abs(a) ** -2 - 1.0))
    # the line through 0 perpendicular to a has unit normal a/|a|
    p = LineReflection(a / abs(a), 0.0)
    return sigma, p


def pair_center(a: complex, b: complex) -> complex:
    """The point ``c`` of ``T_{a,b}``: where L(a, b) meets L(a*, b*)."""
    a, b = complex(a), complex(b)
    check_in_disk(a, b)
    if a == 0 or b == 0:
        raise DomainError("T_{a,b} needs a and b different from 0")
    gap = abs(a) ** 2 - abs(b) ** 2
    if abs(gap) <= 1e-14:
        raise DomainError("T_{a,b} needs |a| != |b|")
    return (a - b + a * b * (a.conjugate() - b.conjugate())) / gap


def disk_map_pair(a: complex, b: complex) -> MoebiusMap:
    """Disk automorphism ``T_{a,b}`` with ``T_{a,b}(a) = b``."""
    c = pair_center(a, b)
    b = complex(b)
    rot = b / b.conjugate()
    return MoebiusMap(rot * c.conjugate(), -rot, 1, -c)


def chordal_isometry(a: complex) -> MoebiusMap:
    """``t_a(z) = (z - a)/(1 + conj(a) z)``: a rotation of the Riemann sphere."""
    a = as_point(a)
    if a is INF:
        raise DomainError("t_a needs a finite point")
    return MoebiusMap(1, -a, a.conjugate(), 1)


def chordal_midpoint_map(a: complex, b: complex) -> MoebiusMap:
    """``t_m`` for the chordal midpoint ``m`` of ``a`` and ``b``.

    Built directly from the closed-form coefficients rather than from ``m``.
    """
    from .geometry import chordal_midpoint_parts

    num, den = chordal_midpoint_parts(a, b)
    # t_m(z) = (den z - num)/(conj(num) z + den), den real
    return MoebiusMap(den, -num, num.conjugate(), den)


def chordal_midpoint_images(a: complex, b: complex) -> tuple[complex, complex]:
    """Closed forms for ``t_m(a)`` and ``t_m(b)``."""
    a, b = complex(a), complex(b)
    sa, sb = math.sqrt(1 + abs(a) ** 2), math.sqrt(1 + abs(b) ** 2)
    u = 1 + a * b.conjugate()
    v = 1 + a.conjugate() * b
    den_a, den_b = abs(u) * sb + u * sa, abs(v) * sa + v * sb
    if abs(den_a) <= 1e-12 * abs(u) * sb or abs(den_b) <= 1e-12 * abs(v) * sa:
        # the midpoint is inf; the closed forms are 0/0 there
        t = chordal_midpoint_map(a, b)
        return t(a), t(b)
    ta = (a * abs(u) * sb - b * u * sa) / den_a
    tb = (b * abs(v) * sa - a * v * sb) / den_b
    return ta, tb
