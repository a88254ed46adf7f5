#!/usr/bin/env python3
"""
Tests for trivial replications and the machine/spanner circles
"""

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from services.errors import CoincidentAnchors, DegenerateTriangle
from services.geometry import (
    Orientation,
    Point,
    Triangle,
    distance,
    interior_angles,
    orientation_sign,
)
from services.instances import random_triangle
from services.replication import (
    machine_circle,
    replication_circles,
    replication_machine_point,
    replication_spanner_point,
    spanner_circle,
    trivial_replication,
)

RIGHT_ISOCELES = Triangle.of([(0, 0), (1, 0), (0, 1)])
ORIGIN = Point(0.0, 0.0)


@st.composite
def replication_setups(draw):
    """(P, u, v, r, orientation) with u and v well apart"""
    seed = draw(st.integers(min_value=0, max_value=2 ** 32 - 1))
    rng = np.random.default_rng(seed)
    P = random_triangle(rng)
    u = Point(*rng.uniform(-10, 10, size=2))
    v = Point(u.x + rng.uniform(1, 5) * rng.choice([-1, 1]), u.y + rng.uniform(-5, 5))
    r = float(rng.uniform(0.01, 3.0))
    orientation = draw(st.sampled_from([Orientation.SAME, Orientation.MIRRORED]))
    return P, u, v, r, orientation


def circle_points(center: Point, r: float, n: int):
    angles = 2 * math.pi * np.arange(n) / n
    return [Point(center.x + r * math.cos(a), center.y + r * math.sin(a)) for a in angles]


class TestTrivialReplication:
    def test_pure_scaling(self):
        rep = trivial_replication(RIGHT_ISOCELES, ORIGIN, Point(2, 0))
        assert rep.replication_point.x == pytest.approx(0.0, abs=1e-12)
        assert rep.replication_point.y == pytest.approx(2.0, abs=1e-12)

    def test_scale_and_rotate(self):
        rep = trivial_replication(RIGHT_ISOCELES, ORIGIN, Point(0, 2))
        assert rep.replication_point.x == pytest.approx(-2.0, abs=1e-12)
        assert rep.replication_point.y == pytest.approx(0.0, abs=1e-12)

    def test_mirrored(self):
        rep = trivial_replication(RIGHT_ISOCELES, ORIGIN, Point(2, 0), Orientation.MIRRORED)
        assert rep.replication_point.x == pytest.approx(0.0, abs=1e-12)
        assert rep.replication_point.y == pytest.approx(-2.0, abs=1e-12)

    def test_coincident_anchors(self):
        with pytest.raises(CoincidentAnchors):
            trivial_replication(RIGHT_ISOCELES, Point(1, 1), Point(1, 1))

    def test_degenerate_pattern(self):
        with pytest.raises(DegenerateTriangle, match="pattern"):
            trivial_replication(Triangle.of([(0, 0), (1, 0), (2, 0)]), ORIGIN, Point(1, 0))

    @given(replication_setups())
    def test_anchors_exact_and_shape_kept(self, setup):
        P, u, v, _, orientation = setup
        rep = trivial_replication(P, u, v, orientation)
        T = rep.triangle
        assert T[0] == u and T[1] == v
        assert rep.anchors == (u, v)

        ratio_T = distance(T[0], T[2]) / distance(T[0], T[1])
        ratio_P = distance(P[0], P[2]) / distance(P[0], P[1])
        assert ratio_T == pytest.approx(ratio_P, rel=1e-12)
        assert interior_angles(T)[0] == pytest.approx(interior_angles(P)[0], abs=1e-12)
        assert orientation_sign(T) == orientation_sign(P) * int(orientation)


class TestCircles:
    def test_zero_radius(self):
        c = trivial_replication(RIGHT_ISOCELES, ORIGIN, Point(1, 0)).replication_point
        assert machine_circle(RIGHT_ISOCELES, ORIGIN, Point(1, 0), 0.0).radius == 0.0
        assert spanner_circle(RIGHT_ISOCELES, ORIGIN, Point(1, 0), 0.0).center == c

    def test_machine_example(self):
        circle = machine_circle(RIGHT_ISOCELES, ORIGIN, Point(1, 0), 0.5)
        assert circle.center.x == pytest.approx(0.0, abs=1e-12)
        assert circle.center.y == pytest.approx(1.0, abs=1e-12)
        assert circle.radius == pytest.approx(0.5, abs=1e-12)

    def test_spanner_example(self):
        circle = spanner_circle(RIGHT_ISOCELES, ORIGIN, Point(1, 0), 0.5)
        assert circle.radius == pytest.approx(0.5 * (1 + math.sqrt(2)), abs=1e-12)

    def test_negative_radius_rejected(self):
        with pytest.raises(ValueError):
            machine_circle(RIGHT_ISOCELES, ORIGIN, Point(1, 0), -0.1)

    @given(replication_setups())
    def test_circle_set_shares_center(self, setup):
        P, u, v, r, orientation = setup
        circles = replication_circles(P, u, v, r, orientation)
        assert circles.machine_circle.center == circles.base.replication_point
        assert circles.spanner_circle.center == circles.base.replication_point
        assert circles.spanner_circle.radius >= circles.machine_circle.radius

    @given(replication_setups())
    def test_machine_points_lie_on_circle(self, setup):
        P, u, v, r, orientation = setup
        circle = machine_circle(P, u, v, r, orientation)
        for v_prime in circle_points(v, r, 360):
            t2 = replication_machine_point(P, u, v_prime, orientation)
            assert abs(distance(circle.center, t2) - circle.radius) <= 1e-9 * max(1.0, circle.radius)

    @given(replication_setups())
    def test_machine_radii_compose_to_spanner(self, setup):
        P, u, v, r, orientation = setup
        swapped = Triangle((P[1], P[0], P[2]))
        total = machine_circle(P, u, v, r, orientation).radius + machine_circle(swapped, v, u, r, orientation).radius
        assert total == pytest.approx(spanner_circle(P, u, v, r, orientation).radius, rel=1e-12)

    @pytest.mark.parametrize("seed", range(5))
    def test_spanner_encloses_and_is_tight(self, seed):
        rng = np.random.default_rng(seed)
        P = random_triangle(rng)
        u, v = Point(0.0, 0.0), Point(*rng.uniform(1, 4, size=2))
        r = float(rng.uniform(0.1, 1.0))
        orientation = Orientation.SAME if seed % 2 else Orientation.MIRRORED
        circle = spanner_circle(P, u, v, r, orientation)

        n = 400
        angles = 2 * math.pi * np.arange(n) / n
        zu = u.as_complex() + r * np.exp(1j * angles)[:, None]
        zv = v.as_complex() + r * np.exp(1j * angles)[None, :]
        # t2 is affine in the anchors: t2 = u' + w (v' - u')
        w = replication_spanner_point(P, Point(0.0, 0.0), Point(1.0, 0.0), orientation).as_complex()
        t2 = zu + w * (zv - zu)
        distances = np.abs(t2 - circle.center.as_complex())
        assert distances.max() <= circle.radius + 1e-9
        assert distances.max() >= circle.radius * (1 - 1e-4)

        for a, b in [(0, 0), (17, 203), (399, 250)]:
            u_prime = Point.from_complex(complex(zu[a, 0]))
            v_prime = Point.from_complex(complex(zv[0, b]))
            direct = replication_spanner_point(P, u_prime, v_prime, orientation)
            assert abs(direct.as_complex() - t2[a, b]) <= 1e-12 * max(1.0, abs(t2[a, b]))
