#!/usr/bin/env python3
"""
Triangle Similarity Metric
The tau distance: how far apart two triangles' replication points land when
both are replicated onto the unit segment ((0,0), (1,0))
"""

import logging
import math
from dataclasses import dataclass

from services.errors import InvalidAngles
from services.geometry import Orientation, Point, Triangle, distance, interior_angles, orientation_sign
from services.replication import trivial_replication

logger = logging.getLogger(__name__)

ANGLE_SUM_TOL = 1e-12

UNIT_ANCHORS = (Point(0.0, 0.0), Point(1.0, 0.0))


@dataclass(frozen=True)
class AngleTriple:
    """Interior angles sorted ascending"""
    a0: float
    a1: float
    a2: float

    def __post_init__(self):
        a0, a1, a2 = self.a0, self.a1, self.a2
        if not all(math.isfinite(a) for a in (a0, a1, a2)):
            raise InvalidAngles(f"angles must be finite: {(a0, a1, a2)}")
        if not (0.0 < a0 <= a1 <= a2 < math.pi):
            raise InvalidAngles(f"angles must satisfy 0 < a0 <= a1 <= a2 < pi: {(a0, a1, a2)}")
        if abs(math.fsum((a0, a1, a2)) - math.pi) > ANGLE_SUM_TOL:
            raise InvalidAngles(f"angles must sum to pi: {(a0, a1, a2)}")

    def ratio(self) -> float:
        """sin(a1) / sin(a2): length of the replication's t0-t2 side"""
        return math.sin(self.a1) / math.sin(self.a2)


def angles_of(T: Triangle) -> AngleTriple:
    return AngleTriple(*sorted(interior_angles(T)))


def tau_from_angles(alpha: AngleTriple, beta: AngleTriple) -> float:
    """
    tau^2 = rho_a^2 + rho_b^2 - 2 rho_a rho_b cos(a0 - b0), rho = sin(x1)/sin(x2).

    Evaluated as (rho_a - rho_b)^2 + 4 rho_a rho_b sin^2(|a0 - b0| / 2),
    which is the same quantity without the cancellation near zero.
    """
    for triple in (alpha, beta):
        if not isinstance(triple, AngleTriple):
            raise InvalidAngles(f"expected AngleTriple, got {type(triple).__name__}")
    rho_a, rho_b = alpha.ratio(), beta.ratio()
    half = math.sin(abs(alpha.a0 - beta.a0) / 2.0)
    tau_sq = (rho_a - rho_b) ** 2 + 4.0 * (rho_a * rho_b) * (half * half)
    return math.sqrt(tau_sq)


def tau(A: Triangle, B: Triangle) -> float:
    """Similarity distance; zero exactly when A and B are similar"""
    return tau_from_angles(angles_of(A), angles_of(B))


def replication_point_of(T: Triangle) -> Point:
    """
    Replication point of T, reordered by ascending angle, on the unit segment.

    The copy is counter-clockwise whatever T's own handedness.
    """
    angles = interior_angles(T)
    order = sorted(range(3), key=lambda i: angles[i])
    ordered = Triangle(tuple(T[i] for i in order))
    orientation = Orientation.SAME if orientation_sign(ordered) > 0 else Orientation.MIRRORED
    return trivial_replication(ordered, *UNIT_ANCHORS, orientation).replication_point


def tau_geometric(A: Triangle, B: Triangle) -> float:
    """tau via the replication point construction"""
    return distance(replication_point_of(A), replication_point_of(B))
