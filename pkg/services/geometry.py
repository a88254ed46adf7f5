#!/usr/bin/env python3
"""
Planar Geometry Primitives
Points, circles, triangles and the similarity predicates the formation solver is built on
"""

import itertools
import logging
import math
from dataclasses import dataclass
from enum import IntEnum
from typing import Iterable, Iterator, List, Sequence, Tuple

from services.errors import DegenerateTriangle

logger = logging.getLogger(__name__)

# Relative threshold for rejecting coincident/collinear vertices (times the longest side)
DEGENERATE_RTOL = 1e-9

# Default tolerance (radians) for sorted-angle similarity
SIMILARITY_TOL = 1e-9


@dataclass(frozen=True)
class Point:
    """A location in the shared global frame"""
    x: float
    y: float

    def __post_init__(self):
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "y", float(self.y))
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"Point coordinates must be finite, got ({self.x}, {self.y})")

    @classmethod
    def from_complex(cls, z: complex) -> "Point":
        return cls(float(z.real), float(z.imag))

    def as_complex(self) -> complex:
        return complex(self.x, self.y)


@dataclass(frozen=True)
class Circle:
    """C(center, radius)"""
    center: Point
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "radius", float(self.radius))
        if not math.isfinite(self.radius) or self.radius < 0:
            raise ValueError(f"Circle radius must be finite and >= 0, got {self.radius}")

    def contains(self, p: Point, tol: float = 0.0) -> bool:
        return distance(self.center, p) <= self.radius + tol


@dataclass(frozen=True)
class Triangle:
    """
    An ordered sequence of exactly three points.

    Doubles as a robot configuration R, a pattern P and a formation Q.
    Construction only checks shape and finiteness; operations that need a
    proper triangle call require_nondegenerate().
    """
    vertices: Tuple[Point, Point, Point]

    def __post_init__(self):
        if len(self.vertices) != 3:
            raise ValueError(f"Triangle needs exactly 3 vertices, got {len(self.vertices)}")
        if not all(isinstance(v, Point) for v in self.vertices):
            raise ValueError("Triangle vertices must be Point instances")
        object.__setattr__(self, "vertices", tuple(self.vertices))

    @classmethod
    def of(cls, points: Iterable[Sequence[float]]) -> "Triangle":
        """Build from three (x, y) pairs"""
        return cls(tuple(Point(float(p[0]), float(p[1])) for p in points))

    @classmethod
    def from_complex(cls, zs: Iterable[complex]) -> "Triangle":
        return cls(tuple(Point.from_complex(z) for z in zs))

    def __getitem__(self, i: int) -> Point:
        return self.vertices[i]

    def __iter__(self) -> Iterator[Point]:
        return iter(self.vertices)

    def __len__(self) -> int:
        return 3

    def as_complex(self) -> Tuple[complex, complex, complex]:
        return tuple(v.as_complex() for v in self.vertices)

    def as_lists(self) -> List[List[float]]:
        return [[v.x, v.y] for v in self.vertices]

    def permuted(self, perm: "Permutation3") -> "Triangle":
        return perm.apply(self)

    def mirrored(self) -> "Triangle":
        """Reflection across the x axis"""
        return Triangle(tuple(Point(v.x, -v.y) for v in self.vertices))


class Orientation(IntEnum):
    """Orientation of a replication relative to the pattern it copies"""
    SAME = 1
    MIRRORED = -1


@dataclass(frozen=True)
class Permutation3:
    """
    Bijection on {0, 1, 2}.

    mapping[k] is the original index placed at slot k, so
    apply(T) == (T[mapping[0]], T[mapping[1]], T[mapping[2]]).
    """
    mapping: Tuple[int, int, int]

    def __post_init__(self):
        mapping = tuple(int(i) for i in self.mapping)
        if sorted(mapping) != [0, 1, 2]:
            raise ValueError(f"Not a permutation of (0, 1, 2): {self.mapping}")
        object.__setattr__(self, "mapping", mapping)

    @classmethod
    def identity(cls) -> "Permutation3":
        return cls((0, 1, 2))

    @classmethod
    def all(cls) -> List["Permutation3"]:
        """All six permutations in lexicographic order (identity first)"""
        return [cls(p) for p in itertools.permutations(range(3))]

    def __getitem__(self, k: int) -> int:
        return self.mapping[k]

    def apply(self, triangle: Triangle) -> Triangle:
        return Triangle(tuple(triangle[i] for i in self.mapping))

    def inverse(self) -> "Permutation3":
        inv = [0, 0, 0]
        for k, i in enumerate(self.mapping):
            inv[i] = k
        return Permutation3(tuple(inv))

    def compose(self, other: "Permutation3") -> "Permutation3":
        """Permutation equal to applying self, then other"""
        return Permutation3(tuple(self.mapping[other[k]] for k in range(3)))

    def is_identity(self) -> bool:
        return self.mapping == (0, 1, 2)


def distance(u: Point, v: Point) -> float:
    """Euclidean distance"""
    return math.hypot(v.x - u.x, v.y - u.y)


def side_lengths(T: Triangle) -> Tuple[float, float, float]:
    """(d(t0,t1), d(t1,t2), d(t2,t0))"""
    return (distance(T[0], T[1]), distance(T[1], T[2]), distance(T[2], T[0]))


def perimeter(T: Triangle) -> float:
    return math.fsum(side_lengths(T))


def signed_area(T: Triangle) -> float:
    """Positive for counter-clockwise vertex order"""
    a, b, c = T
    return 0.5 * ((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x))


def _degeneracy(T: Triangle) -> str:
    sides = side_lengths(T)
    longest = max(sides)
    if longest == 0.0 or min(sides) <= DEGENERATE_RTOL * longest:
        return "coincident vertices"
    if abs(2.0 * signed_area(T)) <= DEGENERATE_RTOL * longest * longest:
        return "collinear vertices"
    return ""


def is_degenerate(T: Triangle) -> bool:
    return bool(_degeneracy(T))


def require_nondegenerate(T: Triangle, label: str = "triangle") -> Triangle:
    """Return T unchanged or raise DegenerateTriangle naming it"""
    reason = _degeneracy(T)
    if reason:
        raise DegenerateTriangle(label, reason)
    return T


def orientation_sign(T: Triangle) -> int:
    """+1 for counter-clockwise, -1 for clockwise"""
    require_nondegenerate(T)
    return 1 if signed_area(T) > 0 else -1


def interior_angles(T: Triangle) -> Tuple[float, float, float]:
    """Interior angle at vertex i in slot i (radians)"""
    require_nondegenerate(T)
    angles = []
    for i in range(3):
        o, a, b = T[i], T[(i + 1) % 3], T[(i - 1) % 3]
        ax, ay = a.x - o.x, a.y - o.y
        bx, by = b.x - o.x, b.y - o.y
        angles.append(math.atan2(abs(ax * by - ay * bx), ax * bx + ay * by))
    return tuple(angles)


def _chain_holds(T: Triangle) -> bool:
    d01, d12, d20 = side_lengths(T)
    return d01 <= d12 <= d20


def canonical_permutation(T: Triangle) -> Permutation3:
    """
    Permutation π with d(t0,t1) <= d(t1,t2) <= d(t2,t0) for T∘π.

    Candidates are tried in lexicographic order, so ties resolve to the
    lowest original index first.
    """
    require_nondegenerate(T)
    for perm in Permutation3.all():
        if _chain_holds(perm.apply(T)):
            return perm
    # The sorted chain always exists for three points
    raise AssertionError(f"no canonical ordering for {T}")


def is_similar(A: Triangle, B: Triangle, tol: float = SIMILARITY_TOL) -> bool:
    """Similarity up to translation, rotation, scale, reflection and permutation"""
    alpha = sorted(interior_angles(A))
    beta = sorted(interior_angles(B))
    return all(abs(a - b) <= tol for a, b in zip(alpha, beta))


def centroid_of(T: Triangle) -> Point:
    return Point(math.fsum(v.x for v in T) / 3.0, math.fsum(v.y for v in T) / 3.0)


def perimeter_normalize(P: Triangle) -> Triangle:
    """Scale P about its centroid to unit perimeter"""
    require_nondegenerate(P)
    c = centroid_of(P)
    k = 1.0 / perimeter(P)
    return Triangle(tuple(Point(c.x + (v.x - c.x) * k, c.y + (v.y - c.y) * k) for v in P))


def scale_of(T: Triangle) -> float:
    """Longest side; the length scale used for relative tolerances"""
    return max(side_lengths(T))
