#!/usr/bin/env python3
"""
Min-Max Formation Solver
Optimal three-robot formation of a triangular pattern: per-robot targets from
trivial replications, the common travel distance, assignment selection and the
focal point the robots move along
"""

import logging
import math
from dataclasses import dataclass, replace
from typing import List, Optional, Tuple, Union

from services.errors import CoincidentTarget, NoMovement
from services.geometry import (
    Circle,
    Orientation,
    Permutation3,
    Point,
    Triangle,
    canonical_permutation,
    centroid_of,
    distance,
    perimeter,
    perimeter_normalize,
    require_nondegenerate,
    scale_of,
)
from services.replication import spanner_circle, trivial_replication

logger = logging.getLogger(__name__)

# Travel at or below this (times the robots' scale) is reported as exactly zero
ZERO_TRAVEL_RTOL = 1e-12

# Orientation travels closer than this (times scale) count as a tie
ORIENTATION_TIE_RTOL = 1e-12

# sin of the angle below which two motion lines count as parallel
PARALLEL_TOL = 1e-9


@dataclass(frozen=True)
class PointAtInfinity:
    """Focal point of parallel motion lines, represented by their direction"""
    direction: Point


FocalPoint = Union[Point, PointAtInfinity]


@dataclass(frozen=True)
class RigidSolution:
    """Formation for one fixed assignment and orientation"""
    destinations: Triangle
    targets: Tuple[Point, Point, Point]
    travel: float
    orientation: Orientation
    per_robot: Tuple[float, float, float]


@dataclass(frozen=True)
class Solution:
    """Globally optimal formation, indexed by the caller's robot order"""
    d_star: float
    permutation: Permutation3
    mirrored: bool
    rigid: RigidSolution
    focal: Optional[FocalPoint]

    @property
    def destinations(self) -> Triangle:
        return self.rigid.destinations


def rigid_solve(R: Triangle, P: Triangle,
                orientation: Orientation = Orientation.SAME) -> RigidSolution:
    """
    Optimal formation under rigid similarity with robot i playing p_i.

    t_i is the trivial replication point of (p_{i+1}, p_{i-1}, p_i) on
    (r_{i+1}, r_{i-1}); with P at unit perimeter every robot travels
    d(r_i, t_i) * d(p_{i+1}, p_{i-1}) straight toward t_i.
    """
    require_nondegenerate(R, "robots")
    require_nondegenerate(P, "pattern")
    pattern = perimeter_normalize(P)

    targets = []
    per_robot = []
    for i in range(3):
        j, k = (i + 1) % 3, (i + 2) % 3
        local = Triangle((pattern[j], pattern[k], pattern[i]))
        t = trivial_replication(local, R[j], R[k], orientation).replication_point
        targets.append(t)
        per_robot.append(distance(R[i], t) * distance(pattern[j], pattern[k]))

    travel = max(per_robot)
    if travel <= ZERO_TRAVEL_RTOL * scale_of(R):
        return RigidSolution(
            destinations=R,
            targets=tuple(targets),
            travel=0.0,
            orientation=orientation,
            per_robot=(0.0, 0.0, 0.0),
        )

    destinations = []
    for i in range(3):
        gap = distance(R[i], targets[i])
        if gap == 0.0:
            raise CoincidentTarget(f"robot {i} coincides with its target while travel is {travel}")
        step = travel / gap
        destinations.append(Point(
            R[i].x + step * (targets[i].x - R[i].x),
            R[i].y + step * (targets[i].y - R[i].y),
        ))

    return RigidSolution(
        destinations=Triangle(tuple(destinations)),
        targets=tuple(targets),
        travel=travel,
        orientation=orientation,
        per_robot=tuple(per_robot),
    )


def shape_functional(R: Triangle, P: Triangle,
                     orientation: Orientation = Orientation.SAME) -> complex:
    """
    Closed-form rigid objective: sum of r_i * (p_{i-1} - p_{i+1}) over perimeter(P).

    Its modulus is the rigid travel; it vanishes exactly on formations
    rigidly similar to P.
    """
    require_nondegenerate(P, "pattern")
    pattern = P.mirrored() if orientation == Orientation.MIRRORED else P
    zr = R.as_complex()
    zp = pattern.as_complex()
    total = sum(zr[i] * (zp[(i - 1) % 3] - zp[(i + 1) % 3]) for i in range(3))
    return total / perimeter(P)


def _to_robot_order(rigid: RigidSolution, robot_order: Permutation3) -> RigidSolution:
    back = robot_order.inverse()
    return replace(
        rigid,
        destinations=back.apply(rigid.destinations),
        targets=tuple(rigid.targets[back[m]] for m in range(3)),
        per_robot=tuple(rigid.per_robot[back[m]] for m in range(3)),
    )


def solve(R: Triangle, P: Triangle) -> Solution:
    """
    Globally optimal min-max formation of P by robots at R.

    Both triangles are put in sorted-side order, the rigid solution is
    computed for both orientations and the shorter one wins (ties keep the
    unmirrored copy). Results are mapped back to the caller's robot order.
    """
    require_nondegenerate(R, "robots")
    require_nondegenerate(P, "pattern")

    robot_order = canonical_permutation(R)
    pattern_order = canonical_permutation(P)
    sorted_robots = robot_order.apply(R)
    sorted_pattern = pattern_order.apply(P)

    same = rigid_solve(sorted_robots, sorted_pattern, Orientation.SAME)
    mirrored = rigid_solve(sorted_robots, sorted_pattern, Orientation.MIRRORED)
    tie = ORIENTATION_TIE_RTOL * scale_of(R)
    best = mirrored if mirrored.travel < same.travel - tie else same
    logger.debug(f"Rigid travels: same={same.travel:.12g} mirrored={mirrored.travel:.12g}, "
                 f"chose {best.orientation.name}")

    rigid = _to_robot_order(best, robot_order)
    assignment = pattern_order.compose(robot_order.inverse())
    focal = None if rigid.travel == 0.0 else focal_point(R, rigid.destinations)

    return Solution(
        d_star=rigid.travel,
        permutation=assignment,
        mirrored=best.orientation == Orientation.MIRRORED,
        rigid=rigid,
        focal=focal,
    )


def rigid_candidates(R: Triangle, P: Triangle) -> List[Tuple[Permutation3, Orientation, RigidSolution]]:
    """All 12 rigid solutions: robot i plays P[perm[i]], in both orientations"""
    candidates = []
    for perm in Permutation3.all():
        permuted = perm.apply(P)
        for orientation in (Orientation.SAME, Orientation.MIRRORED):
            candidates.append((perm, orientation, rigid_solve(R, permuted, orientation)))
    return candidates


def _cross(ax: float, ay: float, bx: float, by: float) -> float:
    return ax * by - ay * bx


def _motion_lines(R: Triangle, Q: Triangle) -> List[Tuple[Point, float, float]]:
    lines = []
    for r, q in zip(R, Q):
        length = distance(r, q)
        if length > 0.0:
            lines.append((r, (q.x - r.x) / length, (q.y - r.y) / length))
    return lines


def _intersections(lines: List[Tuple[Point, float, float]], parallel_tol: float) -> List[Point]:
    hits = []
    for a in range(len(lines)):
        for b in range(a + 1, len(lines)):
            ra, ux, uy = lines[a]
            rb, vx, vy = lines[b]
            denom = _cross(ux, uy, vx, vy)
            if abs(denom) <= parallel_tol:
                continue
            t = _cross(rb.x - ra.x, rb.y - ra.y, vx, vy) / denom
            hits.append(Point(ra.x + t * ux, ra.y + t * uy))
    return hits


def focal_point(R: Triangle, Q: Triangle, parallel_tol: float = PARALLEL_TOL) -> FocalPoint:
    """
    Common point of the lines through (r_i, q_i).

    Pairwise intersections of non-parallel lines are averaged; when every
    pair is parallel the motion is a translation and a PointAtInfinity
    carrying the shared direction is returned.
    """
    lines = _motion_lines(R, Q)
    if len(lines) < 2:
        raise NoMovement("focal point needs at least two moving robots")

    hits = _intersections(lines, parallel_tol)
    if not hits:
        _, ux, uy = lines[0]
        return PointAtInfinity(Point(ux, uy))
    return Point(math.fsum(h.x for h in hits) / len(hits), math.fsum(h.y for h in hits) / len(hits))


def focal_spread(R: Triangle, Q: Triangle, parallel_tol: float = PARALLEL_TOL) -> float:
    """Largest distance between pairwise line intersections (0 when fewer than two)"""
    hits = _intersections(_motion_lines(R, Q), parallel_tol)
    return max((distance(h, g) for h in hits for g in hits), default=0.0)


def line_residuals(R: Triangle, Q: Triangle, f: Point) -> Tuple[float, ...]:
    """Distance from f to each motion line"""
    return tuple(abs(_cross(f.x - r.x, f.y - r.y, ux, uy)) for r, ux, uy in _motion_lines(R, Q))


def centroid(T: Triangle) -> Point:
    """Arithmetic mean of the vertices"""
    return centroid_of(T)


def assigned_pattern(P: Triangle, solution: Solution) -> Triangle:
    """P reordered so that robot i plays vertex i"""
    return solution.permutation.apply(P)


def spanner_circles(R: Triangle, P: Triangle, solution: Solution) -> Tuple[Circle, Circle, Circle]:
    """
    Spanner circle of radius d* around each robot's target.

    The two other robots end within d* of where they started, so q_i is
    confined to circle i; the optimum puts it on the boundary.
    """
    pattern = assigned_pattern(P, solution)
    orientation = Orientation.MIRRORED if solution.mirrored else Orientation.SAME
    circles = []
    for i in range(3):
        j, k = (i + 1) % 3, (i + 2) % 3
        local = Triangle((pattern[j], pattern[k], pattern[i]))
        circles.append(spanner_circle(local, R[j], R[k], solution.d_star, orientation))
    return tuple(circles)
