import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from moebsym.errors import DegeneracyError, DomainError
from moebsym.moebius import apply
from moebsym.plane import (
    INF,
    Infinity,
    absolute_ratio,
    ahlfors_bracket,
    as_point,
    chordal_distance,
    hyperbolic_distance,
    hyperbolic_distance_sh,
    stereographic_projection,
)

from conftest import disk_point, plane_point, random_map

finite = st.complex_numbers(max_magnitude=1e3, allow_nan=False, allow_infinity=False)
in_disk = st.complex_numbers(max_magnitude=0.98, allow_nan=False, allow_infinity=False)


def test_infinity_is_a_singleton():
    assert Infinity() is INF
    assert INF == INF
    assert INF != 0
    assert as_point(INF) is INF


def test_as_point_rejects_nan():
    with pytest.raises(DomainError):
        as_point(complex(float("nan"), 0))


@pytest.mark.parametrize(
    "z, expected",
    [(INF, (0, 0, 1)), (0, (0, 0, 0)), (1, (0.5, 0, 0.5))],
)
def test_stereographic_examples(z, expected):
    assert np.allclose(stereographic_projection(z), expected, atol=1e-15)


@given(finite)
def test_projection_lands_on_sphere(z):
    p = stereographic_projection(z)
    assert abs(math.dist(p, (0, 0, 0.5)) - 0.5) <= 1e-12


def test_chordal_examples():
    assert chordal_distance(0, INF) == 1.0
    assert chordal_distance(1, 1j) == pytest.approx(math.sqrt(2) / 2, abs=1e-15)
    assert chordal_distance(INF, INF) == 0.0
    assert chordal_distance(3 + 4j, INF) == pytest.approx(1 / math.sqrt(26))


def test_chordal_equals_sphere_distance(rng):
    for _ in range(100):
        x, y = plane_point(rng), plane_point(rng)
        q = chordal_distance(x, y)
        via_sphere = stereographic_projection(x).distance(stereographic_projection(y))
        assert abs(q - via_sphere) <= 1e-12
        assert 0.0 <= q <= 1.0
        assert q == pytest.approx(chordal_distance(y, x), abs=1e-16)


def test_ahlfors_bracket_examples():
    assert ahlfors_bracket(0, 0.3 + 0.2j) == 1.0
    x = 0.4 - 0.5j
    assert ahlfors_bracket(x, x) == pytest.approx(1 - abs(x) ** 2, abs=1e-15)
    with pytest.raises(DomainError):
        ahlfors_bracket(1.0, 0)


@given(in_disk, in_disk)
def test_ahlfors_bracket_identity(x, y):
    lhs = ahlfors_bracket(x, y) ** 2 - abs(x - y) ** 2
    assert abs(lhs - (1 - abs(x) ** 2) * (1 - abs(y) ** 2)) <= 1e-12


def test_hyperbolic_examples():
    assert hyperbolic_distance(0, 0) == 0.0
    for r in (0.1, 0.5, 0.9):
        assert hyperbolic_distance(0, r) == pytest.approx(math.log((1 + r) / (1 - r)), rel=1e-13)
    with pytest.raises(DomainError):
        hyperbolic_distance(0, 1.0)
    with pytest.raises(DomainError):
        hyperbolic_distance(0, 1 - 1e-13)


@settings(max_examples=300)
@given(in_disk, in_disk)
def test_hyperbolic_two_forms_agree(x, y):
    assert abs(hyperbolic_distance(x, y) - hyperbolic_distance_sh(x, y)) <= 1e-10 * max(
        1.0, hyperbolic_distance(x, y)
    )


def test_hyperbolic_forms_agree_tightly(rng):
    for _ in range(500):
        x, y = disk_point(rng, 0.9), disk_point(rng, 0.9)
        assert abs(hyperbolic_distance(x, y) - hyperbolic_distance_sh(x, y)) <= 1e-12


def test_hyperbolic_metric_axioms(rng):
    for _ in range(500):
        x, y, z = (disk_point(rng) for _ in range(3))
        dxy = hyperbolic_distance(x, y)
        assert dxy == pytest.approx(hyperbolic_distance(y, x), abs=1e-12)
        assert dxy <= hyperbolic_distance(x, z) + hyperbolic_distance(z, y) + 1e-10


def test_absolute_ratio_examples():
    assert absolute_ratio(0, 1, 2, 3) == pytest.approx(4.0)
    x = 2.0 - 1.5j
    assert absolute_ratio(0, 1, x, INF) == pytest.approx(abs(x))
    # every position of the infinite point cancels its own two factors
    assert absolute_ratio(INF, 1, 2, 3) == pytest.approx(abs(1 - 3) / abs(2 - 3))
    assert absolute_ratio(0, INF, 2, 3) == pytest.approx(abs(0 - 2) / abs(2 - 3))
    assert absolute_ratio(0, 1, INF, 3) == pytest.approx(abs(1 - 3) / abs(0 - 1))


def test_absolute_ratio_rejects_repeats():
    with pytest.raises(DegeneracyError):
        absolute_ratio(0, 1, 1, 2)
    with pytest.raises(DegeneracyError):
        absolute_ratio(INF, 1, INF, 2)


def test_absolute_ratio_moebius_invariance(rng):
    for _ in range(200):
        pts = [plane_point(rng) for _ in range(4)]
        m = random_map(rng)
        before = absolute_ratio(*pts)
        after = absolute_ratio(*(apply(m, p) for p in pts))
        assert after == pytest.approx(before, rel=1e-9)
