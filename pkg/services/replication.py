#!/usr/bin/env python3
"""
Pattern Replication
Trivial replications of a triangular pattern on a pair of anchors, and the
circles traced by replications whose anchors move on circles of radius r
"""

import logging
from dataclasses import dataclass
from typing import Tuple

from services.errors import CoincidentAnchors
from services.geometry import (
    Circle,
    Orientation,
    Point,
    Triangle,
    distance,
    require_nondegenerate,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TrivialReplication:
    """The copy of a pattern rigidly pinned to (u, v); t_2 is the replication point"""
    triangle: Triangle
    anchors: Tuple[Point, Point]
    replication_point: Point


@dataclass(frozen=True)
class ReplicationCircleSet:
    """Machine and spanner circles, both centered at the base replication point"""
    machine_circle: Circle
    spanner_circle: Circle
    base: TrivialReplication
    r: float


def _shape_ratio(P: Triangle, orientation: Orientation) -> complex:
    """(p2 - p0) / (p1 - p0), conjugated for a mirrored copy"""
    p0, p1, p2 = P.as_complex()
    w = (p2 - p0) / (p1 - p0)
    if orientation == Orientation.MIRRORED:
        w = w.conjugate()
    return w


def trivial_replication(P: Triangle, u: Point, v: Point,
                        orientation: Orientation = Orientation.SAME) -> TrivialReplication:
    """
    Copy of P with t_0 = u and t_1 = v.

    Args:
        P: Pattern to replicate
        u: Anchor for p_0
        v: Anchor for p_1
        orientation: SAME keeps P's handedness, MIRRORED reflects it

    Returns:
        The replication; t_0 and t_1 are the anchors themselves
    """
    require_nondegenerate(P, "pattern")
    if distance(u, v) == 0.0:
        raise CoincidentAnchors(f"anchors coincide at ({u.x}, {u.y})")

    w = _shape_ratio(P, orientation)
    zu, zv = u.as_complex(), v.as_complex()
    c = Point.from_complex(zu + w * (zv - zu))
    return TrivialReplication(
        triangle=Triangle((u, v, c)),
        anchors=(u, v),
        replication_point=c,
    )


def _check_radius(r: float):
    if r < 0:
        raise ValueError(f"Replication radius must be >= 0, got {r}")


def machine_circle(P: Triangle, u: Point, v: Point, r: float,
                   orientation: Orientation = Orientation.SAME) -> Circle:
    """Circle traced by replication points of P on (u, C(v, r))"""
    _check_radius(r)
    c = trivial_replication(P, u, v, orientation).replication_point
    return Circle(c, r * distance(u, c) / distance(u, v))


def spanner_circle(P: Triangle, u: Point, v: Point, r: float,
                   orientation: Orientation = Orientation.SAME) -> Circle:
    """Smallest circle enclosing replication points of P on (C(u, r), C(v, r))"""
    _check_radius(r)
    c = trivial_replication(P, u, v, orientation).replication_point
    return Circle(c, r * (distance(u, c) + distance(v, c)) / distance(u, v))


def replication_circles(P: Triangle, u: Point, v: Point, r: float,
                        orientation: Orientation = Orientation.SAME) -> ReplicationCircleSet:
    base = trivial_replication(P, u, v, orientation)
    return ReplicationCircleSet(
        machine_circle=machine_circle(P, u, v, r, orientation),
        spanner_circle=spanner_circle(P, u, v, r, orientation),
        base=base,
        r=r,
    )


def replication_machine_point(P: Triangle, u: Point, v_prime: Point,
                              orientation: Orientation = Orientation.SAME) -> Point:
    """One member of the machine point set: v' is expected on C(v, r)"""
    return trivial_replication(P, u, v_prime, orientation).replication_point


def replication_spanner_point(P: Triangle, u_prime: Point, v_prime: Point,
                              orientation: Orientation = Orientation.SAME) -> Point:
    """One member of the spanner point set: u' on C(u, r), v' on C(v, r)"""
    return trivial_replication(P, u_prime, v_prime, orientation).replication_point
