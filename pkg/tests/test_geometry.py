import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from moebsym.errors import DegeneracyError, DomainError
from moebsym.geometry import (
    boundary_ortho_circle,
    check_positive_order,
    chord_endpoints,
    chordal_midpoint,
    circle_quad_points,
    collinear_with_origin,
    geodesic_endpoints,
    hyperbolic_midpoint,
    line_intersection,
    lis_star_variants,
    nearest_geodesic_point,
    orthogonal_arcs_intersection,
    ortho_circle,
)
from moebsym.plane import INF, absolute_ratio, chordal_distance, hyperbolic_distance

from conftest import disk_point, ordered_circle_quad, plane_point

in_disk = st.complex_numbers(max_magnitude=0.95, allow_nan=False, allow_infinity=False)


def cross(u, v):
    return (u.conjugate() * v).imag


def valid_pair(rng):
    while True:
        a, b = disk_point(rng, 0.95, 0.05), disk_point(rng, 0.95, 0.05)
        if abs(cross(a, b)) > 1e-3 and abs(a - b) > 1e-3:
            return a, b


def test_line_intersection_basic():
    assert line_intersection(-1, 1, -1j, 1j) == pytest.approx(0, abs=1e-15)
    assert line_intersection(0, 1, 1j, 1 + 1j) is INF
    with pytest.raises(DegeneracyError):
        line_intersection(0, 1, 2, 3)
    with pytest.raises(DegeneracyError):
        line_intersection(1, 1, 2, 3)


def test_line_intersection_lies_on_both(rng):
    for _ in range(200):
        a, b, c, d = (plane_point(rng) for _ in range(4))
        w = line_intersection(a, b, c, d)
        assert abs(cross(b - a, w - a)) <= 1e-9 * abs(b - a) * max(1.0, abs(w - a))
        assert abs(cross(d - c, w - c)) <= 1e-9 * abs(d - c) * max(1.0, abs(w - c))


def test_lis_star_variants_match_generic(rng):
    for _ in range(100):
        a, b = valid_pair(rng)
        if abs(abs(a) - abs(b)) < 1e-2:
            continue
        sa, sb = 1 / a.conjugate(), 1 / b.conjugate()
        expected = (
            line_intersection(a, b, -sa, -sb),
            line_intersection(a, b, sa, sb),
            line_intersection(a, sb, b, sa),
            line_intersection(a, -sb, b, -sa),
        )
        for got, want in zip(lis_star_variants(a, b), expected):
            assert abs(got - want) <= 1e-8 * max(1.0, abs(want))


def test_chord_endpoints(rng):
    for _ in range(300):
        a, b = valid_pair(rng)
        a1, b1 = chord_endpoints(a, b)
        assert abs(abs(a1) - 1) <= 1e-12 and abs(abs(b1) - 1) <= 1e-12
        for z in (a, b, b1):
            assert abs(cross(z - a1, b - a1)) <= 1e-10
        assert abs(a1 - a) < abs(a1 - b)
    with pytest.raises(DomainError):
        chord_endpoints(0.2, 0.5)


def test_hyperbolic_midpoint_trivial():
    assert hyperbolic_midpoint(0.3 + 0.2j, -0.3 - 0.2j) == pytest.approx(0, abs=1e-16)
    x = 0.5 - 0.1j
    assert hyperbolic_midpoint(x, x) == pytest.approx(x, abs=1e-15)
    with pytest.raises(DomainError):
        hyperbolic_midpoint(1.2, 0)


@settings(max_examples=300)
@given(in_disk, in_disk)
def test_hyperbolic_midpoint_halves(x, y):
    z = hyperbolic_midpoint(x, y)
    half = hyperbolic_distance(x, y) / 2
    assert abs(hyperbolic_distance(x, z) - half) <= 1e-9
    assert abs(hyperbolic_distance(y, z) - half) <= 1e-9


def test_chordal_midpoint(rng):
    assert chordal_midpoint(0.2 + 0.1j, -0.2 - 0.1j) == pytest.approx(0, abs=1e-15)
    # outside the unit circle the short arc between a and -a runs through inf
    assert chordal_midpoint(2 + 1j, -2 - 1j) is INF
    assert chordal_midpoint(2 + 1j, 2 + 1j) == pytest.approx(2 + 1j, rel=1e-14)
    for _ in range(500):
        a, b = plane_point(rng), plane_point(rng)
        m = chordal_midpoint(a, b)
        assert abs(chordal_distance(a, m) - chordal_distance(b, m)) <= 1e-10
        # chords do not add up; the great-circle arc is what gets halved
        arc = 2 * math.asin(min(1.0, chordal_distance(a, b)))
        for z in (a, b):
            assert abs(2 * math.asin(min(1.0, chordal_distance(z, m))) - arc / 2) <= 1e-10
    with pytest.raises(DegeneracyError):
        chordal_midpoint(2.0, -0.5)


def test_ortho_circle_figure_value():
    circ = ortho_circle(-0.9j, 0.5 - 0.3j)
    assert abs(circ.center - (0.736 - 1.005j)) <= 0.005


def test_ortho_circle_properties(rng):
    for _ in range(300):
        a, b = valid_pair(rng)
        circ = ortho_circle(a, b)
        assert abs(abs(circ.center) ** 2 - circ.radius**2 - 1) <= 1e-9 * abs(circ.center) ** 2
        assert abs(abs(circ.center - a) - circ.radius) <= 1e-10 * max(1.0, circ.radius)
        assert abs(abs(circ.center - b) - circ.radius) <= 1e-10 * max(1.0, circ.radius)
        arc = circ.arc(64)
        assert np.all(np.abs(arc) <= 1 + 1e-9)
        assert abs(abs(arc[0]) - 1) <= 1e-9 and abs(abs(arc[-1]) - 1) <= 1e-9
    with pytest.raises(DegeneracyError):
        ortho_circle(0.2, 0.6)


def test_nearest_geodesic_point_examples():
    assert nearest_geodesic_point(0.2, 0.6) == 0
    k = nearest_geodesic_point(-0.9j, 0.5 - 0.3j)
    assert abs(k - (0.296 - 0.405j)) <= 0.005


def test_nearest_geodesic_point_minimizes(rng):
    for _ in range(50):
        a, b = valid_pair(rng)
        k = nearest_geodesic_point(a, b)
        arc = ortho_circle(a, b).arc(10_000)
        assert abs(k) <= np.abs(arc).min() + 1e-9
        assert abs(k) >= np.abs(arc).min() - 1e-6


def test_nearest_point_not_farther_than_midpoint(rng):
    for _ in range(500):
        a, b = disk_point(rng, 0.95, 0.01), disk_point(rng, 0.95, 0.01)
        assert abs(nearest_geodesic_point(a, b)) <= abs(hyperbolic_midpoint(a, b)) + 1e-12


def test_geodesic_endpoints_diameter():
    e1, e2 = geodesic_endpoints(0.2, 0.7)
    assert e1 == pytest.approx(-1, abs=1e-12)
    assert e2 == pytest.approx(1, abs=1e-12)
    with pytest.raises(DegeneracyError):
        geodesic_endpoints(0.3, 0.3)


def test_geodesic_endpoints_log_ratio(rng):
    for _ in range(300):
        x, y = disk_point(rng, 0.95, 0.01), disk_point(rng, 0.95, 0.01)
        ex, ey = geodesic_endpoints(x, y)
        assert abs(abs(ex) - 1) <= 1e-12 and abs(abs(ey) - 1) <= 1e-12
        rho = hyperbolic_distance(x, y)
        assert abs(math.log(absolute_ratio(ex, x, y, ey)) - rho) <= 1e-9 * max(1.0, rho)


def test_boundary_ortho_circle(rng):
    for _ in range(100):
        p, q = (cmath.exp(1j * rng.uniform(0, 2 * math.pi)) for _ in range(2))
        if abs(p + q) < 1e-3 or abs(p - q) < 1e-3:
            continue
        circ = boundary_ortho_circle(p, q)
        assert abs(abs(circ.center - p) - circ.radius) <= 1e-9 * circ.radius
        assert abs(abs(circ.center - q) - circ.radius) <= 1e-9 * circ.radius
        assert abs(abs(circ.center) ** 2 - circ.radius**2 - 1) <= 1e-9 * abs(circ.center) ** 2
    with pytest.raises(DegeneracyError):
        boundary_ortho_circle(1, -1)


def test_positive_order_checks():
    pts = [cmath.exp(1j * t) for t in (0, 1, 2, 3)]
    check_positive_order(*pts)
    with pytest.raises(DomainError):
        check_positive_order(pts[0], pts[2], pts[1], pts[3])
    with pytest.raises(DomainError):
        check_positive_order(0.5, *pts[1:])
    with pytest.raises(DomainError):
        check_positive_order(pts[0], pts[1], pts[1], pts[3])


def test_circle_quad_figure_values():
    pts = circle_quad_points(*(cmath.exp(1j * t) for t in (0, 0.3, 1.5, 2.1)))
    assert abs(pts.w1 - (0.822 + 1.172j)) <= 0.005
    assert abs(pts.w4 - (0.354 + 0.260j)) <= 0.005
    assert abs(pts.w5 - (0.233 + 0.332j)) <= 0.005


def test_circle_quad_properties(rng):
    done = 0
    while done < 300:
        quad = ordered_circle_quad(rng)
        try:
            pts = circle_quad_points(*quad)
        except DegeneracyError:
            continue
        done += 1
        a, b, c, d = quad
        # orthocenter of (0, w1, w3): altitudes through w2
        for p, q, r in ((0, pts.w1, pts.w3), (pts.w1, 0, pts.w3)):
            alt = (pts.w2 - p).conjugate() * (r - q)
            assert abs(alt.real) <= 1e-9 * max(1.0, abs(pts.w2 - p) * abs(r - q))
        assert abs(pts.w4) < 1
        for p, q in ((a, c), (b, d)):
            circ = boundary_ortho_circle(p, q) if abs(p + q) > 1e-6 else None
            if circ is None:
                assert abs(cross(p, pts.w4)) <= 1e-9
            else:
                assert abs(abs(pts.w4 - circ.center) - circ.radius) <= 1e-9 * max(1.0, circ.radius)
        r = math.sqrt(abs(pts.w1) ** 2 - 1)
        assert abs(abs(pts.w5 - pts.w1) - r) <= 1e-9 * max(1.0, r)
        assert abs(abs(pts.w5) - (abs(pts.w1) - r)) <= 1e-12 * abs(pts.w1)


def test_w4_root_pair_is_inverse_symmetric(rng):
    for _ in range(200):
        a, b, c, d = ordered_circle_quad(rng)
        den = a - b + c - d
        if abs(den) < 1e-3:
            continue
        disc = cmath.sqrt((a - b) * (b - c) * (c - d) * (d - a))
        roots = [(a * c - b * d + s) / den for s in (disc, -disc)]
        inner = orthogonal_arcs_intersection(a, b, c, d)
        outer = max(roots, key=abs)
        assert abs(min(roots, key=abs) - inner) <= 1e-9
        assert abs(outer) >= 1 - 1e-12
        assert abs(inner * outer.conjugate() - 1) <= 1e-8


def test_square_quadruple_gives_center_zero():
    w4 = orthogonal_arcs_intersection(1, 1j, -1, -1j)
    assert abs(w4) <= 1e-15


def test_parallel_chords():
    # a b = c d makes L(a, b) and L(c, d) parallel
    pts = circle_quad_points(*(cmath.exp(1j * t) for t in (0, 1, 2, 2 * math.pi - 1)))
    assert pts.w1 is INF
    assert pts.w5 == 0
    with pytest.raises(DegeneracyError):
        pts.w1_circle


def test_collinear_with_origin():
    assert collinear_with_origin(0.3, -0.6)
    assert collinear_with_origin(0.1 + 0.1j, 0.4 + 0.4j)
    assert not collinear_with_origin(0.3, 0.3j)
