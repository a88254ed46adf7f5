#!/usr/bin/env python3
"""
Tests for the min-max formation solver
Equal travel, validity, assignment selection, focal point and centroid
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from services.errors import DegenerateTriangle, NoMovement
from services.geometry import (
    Orientation,
    Permutation3,
    Point,
    Triangle,
    centroid_of,
    distance,
    is_similar,
    orientation_sign,
    scale_of,
)
from services.instances import random_instance
from services.solver import (
    PointAtInfinity,
    assigned_pattern,
    centroid,
    focal_point,
    focal_spread,
    line_residuals,
    rigid_candidates,
    rigid_solve,
    shape_functional,
    solve,
    spanner_circles,
)

EQUILATERAL = Triangle.of([(0, 0), (1, 0), (0.5, math.sqrt(3) / 2)])
RIGHT_ISOCELES = Triangle.of([(0, 0), (1, 0), (0, 1)])


@st.composite
def instances(draw):
    seed = draw(st.integers(min_value=0, max_value=2 ** 32 - 1))
    return random_instance(np.random.default_rng(seed))


def transform(T: Triangle, angle: float, k: float, shift=(0.0, 0.0), reflect=False) -> Triangle:
    c, s = math.cos(angle), math.sin(angle)
    points = []
    for p in T:
        y = -p.y if reflect else p.y
        points.append((k * (c * p.x - s * y) + shift[0], k * (s * p.x + c * y) + shift[1]))
    return Triangle.of(points)


class TestRigidSolve:
    def test_similar_pattern_needs_no_travel(self):
        P = transform(EQUILATERAL, 0.7, 3.0, (4, -2))
        rigid = rigid_solve(EQUILATERAL, P)
        assert rigid.travel == 0.0
        assert rigid.destinations == EQUILATERAL

    def test_identical_pattern(self):
        assert rigid_solve(RIGHT_ISOCELES, RIGHT_ISOCELES, Orientation.SAME).travel == 0.0

    def test_worked_example_equal_travel(self):
        R = Triangle.of([(0, 0), (4, 0), (1, 3)])
        rigid = rigid_solve(R, EQUILATERAL)
        travels = rigid.per_robot
        assert max(travels) - min(travels) <= 1e-12 * max(travels)
        for r, q in zip(R, rigid.destinations):
            assert distance(r, q) == pytest.approx(rigid.travel, rel=1e-12)

    def test_degenerate_robots(self):
        with pytest.raises(DegenerateTriangle, match="robots"):
            rigid_solve(Triangle.of([(0, 0), (1, 0), (2, 0)]), EQUILATERAL)

    @given(instances(), st.sampled_from([Orientation.SAME, Orientation.MIRRORED]))
    def test_equal_travel_and_validity(self, instance, orientation):
        R, P = instance
        rigid = rigid_solve(R, P, orientation)
        assert max(rigid.per_robot) - min(rigid.per_robot) <= 1e-12 * max(1.0, scale_of(R))
        for r, q in zip(R, rigid.destinations):
            assert distance(r, q) == pytest.approx(rigid.travel, rel=1e-9, abs=1e-12)
        assert is_similar(rigid.destinations, P, 1e-9)
        expected_sign = orientation_sign(P) * int(orientation)
        assert orientation_sign(rigid.destinations) == expected_sign

    @given(instances(), st.sampled_from([Orientation.SAME, Orientation.MIRRORED]))
    def test_destinations_on_segment_toward_targets(self, instance, orientation):
        R, P = instance
        rigid = rigid_solve(R, P, orientation)
        for r, q, t in zip(R, rigid.destinations, rigid.targets):
            # q lies between r and t, or beyond t on the same ray
            dx, dy = t.x - r.x, t.y - r.y
            cross = (q.x - r.x) * dy - (q.y - r.y) * dx
            dot = (q.x - r.x) * dx + (q.y - r.y) * dy
            assert abs(cross) <= 1e-9 * max(1.0, scale_of(R)) ** 2
            assert dot >= 0

    @given(instances(), st.sampled_from([Orientation.SAME, Orientation.MIRRORED]))
    def test_closed_form_agrees(self, instance, orientation):
        R, P = instance
        rigid = rigid_solve(R, P, orientation)
        assert abs(shape_functional(R, P, orientation)) == pytest.approx(rigid.travel, rel=1e-9, abs=1e-12)


class TestSolve:
    @pytest.mark.parametrize("perm", Permutation3.all())
    @pytest.mark.parametrize("reflect", [False, True])
    def test_similar_pattern_any_pose(self, perm, reflect):
        R = Triangle.of([(0, 0), (4, 0), (1, 3)])
        P = perm.apply(transform(R, 1.1, 0.3, (7, 7), reflect))
        solution = solve(R, P)
        assert solution.d_star == 0.0
        assert solution.destinations == R
        assert solution.focal is None

    @settings(max_examples=200)
    @given(instances())
    def test_not_worse_than_any_rigid_candidate(self, instance):
        R, P = instance
        solution = solve(R, P)
        best = min(rigid.travel for _, _, rigid in rigid_candidates(R, P))
        assert solution.d_star <= best + 1e-12 * scale_of(R)
        assert solution.d_star == pytest.approx(best, rel=1e-12, abs=1e-12 * scale_of(R))

    @given(instances())
    def test_destinations_similar_and_equal_travel(self, instance):
        R, P = instance
        solution = solve(R, P)
        assert is_similar(solution.destinations, P, 1e-9)
        for r, q in zip(R, solution.destinations):
            assert distance(r, q) == pytest.approx(solution.d_star, rel=1e-9)

    @given(instances())
    def test_robot_order_mapping(self, instance):
        R, P = instance
        solution = solve(R, P)
        # Robot i ends on the image of the pattern vertex it was assigned
        pattern = assigned_pattern(P, solution)
        Q = solution.destinations
        for a in range(3):
            for b in range(3):
                ratio_q = distance(Q[a], Q[b]) / scale_of(Q)
                ratio_p = distance(pattern[a], pattern[b]) / scale_of(pattern)
                assert ratio_q == pytest.approx(ratio_p, abs=1e-9)

    @given(instances())
    def test_targets_in_robot_order(self, instance):
        R, P = instance
        solution = solve(R, P)
        for r, q, t in zip(R, solution.destinations, solution.rigid.targets):
            assert abs((q.x - r.x) * (t.y - r.y) - (q.y - r.y) * (t.x - r.x)) <= 1e-9 * scale_of(R) ** 2

    @given(instances())
    def test_formation_keeps_robot_orientation(self, instance):
        R, P = instance
        solution = solve(R, P)
        assert orientation_sign(solution.destinations) == orientation_sign(R)

    @given(instances(), st.floats(0.1, 10.0))
    def test_scale_equivariance(self, instance, k):
        R, P = instance
        scaled = Triangle.of([(k * p.x, k * p.y) for p in R])
        assert solve(scaled, P).d_star == pytest.approx(k * solve(R, P).d_star, rel=1e-9)

    @given(instances(), st.floats(0.1, 10.0))
    def test_pattern_scale_irrelevant(self, instance, k):
        R, P = instance
        bigger = Triangle.of([(k * p.x, k * p.y) for p in P])
        assert solve(R, bigger).d_star == pytest.approx(solve(R, P).d_star, rel=1e-9)

    @given(instances())
    def test_destinations_on_spanner_circles(self, instance):
        R, P = instance
        solution = solve(R, P)
        for q, t, circle in zip(solution.destinations, solution.rigid.targets, spanner_circles(R, P, solution)):
            assert distance(circle.center, t) <= 1e-9 * scale_of(R)
            assert distance(q, circle.center) == pytest.approx(circle.radius, abs=1e-9 * scale_of(R))

    def test_deterministic(self):
        R = Triangle.of([(0, 0), (4, 0), (1, 3)])
        assert solve(R, EQUILATERAL) == solve(R, EQUILATERAL)


class TestFocalPoint:
    def test_shrinking_about_origin(self):
        R = Triangle.of([(1, 0), (-0.5, math.sqrt(3) / 2), (-0.5, -math.sqrt(3) / 2)])
        Q = Triangle.of([(0.5 * p.x, 0.5 * p.y) for p in R])
        f = focal_point(R, Q)
        assert isinstance(f, Point)
        assert f.x == pytest.approx(0.0, abs=1e-12)
        assert f.y == pytest.approx(0.0, abs=1e-12)

    def test_translation_is_at_infinity(self):
        R = Triangle.of([(0, 0), (4, 0), (1, 3)])
        Q = Triangle.of([(p.x + 1, p.y + 2) for p in R])
        f = focal_point(R, Q)
        assert isinstance(f, PointAtInfinity)
        assert f.direction.x == pytest.approx(1 / math.sqrt(5))
        assert f.direction.y == pytest.approx(2 / math.sqrt(5))

    def test_no_movement(self):
        R = Triangle.of([(0, 0), (4, 0), (1, 3)])
        with pytest.raises(NoMovement):
            focal_point(R, R)

    @settings(max_examples=200)
    @given(instances())
    def test_motion_lines_concurrent(self, instance):
        R, P = instance
        solution = solve(R, P)
        scale = scale_of(R)
        f = solution.focal
        if isinstance(f, Point) and distance(f, centroid_of(R)) <= 100 * scale:
            assert focal_spread(R, solution.destinations) <= 1e-6 * scale
            assert max(line_residuals(R, solution.destinations, f)) <= 1e-6 * scale


class TestCentroid:
    def test_mean(self):
        c = centroid(Triangle.of([(0, 0), (3, 0), (0, 3)]))
        assert (c.x, c.y) == (1.0, 1.0)

    def test_equilateral_about_origin(self):
        c = centroid(Triangle.of([(1, 0), (-0.5, math.sqrt(3) / 2), (-0.5, -math.sqrt(3) / 2)]))
        assert c.x == pytest.approx(0.0, abs=1e-15)
        assert c.y == pytest.approx(0.0, abs=1e-15)

    @given(instances())
    def test_conserved_for_equilateral_pattern(self, instance):
        R, _ = instance
        solution = solve(R, EQUILATERAL)
        assert distance(centroid(solution.destinations), centroid(R)) <= 1e-9 * max(1.0, scale_of(R))
