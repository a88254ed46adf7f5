#!/usr/bin/env python3
"""
Random Instances
Seeded generation of well-conditioned robot/pattern pairs for verification runs
"""

from typing import Iterator, Tuple

import numpy as np

from services.geometry import Triangle, interior_angles, is_degenerate

# Smallest interior angle (radians) of a generated triangle
MIN_ANGLE = 0.05

ROBOT_SPAN = 10.0


def random_triangle(rng: np.random.Generator, span: float = ROBOT_SPAN,
                    min_angle: float = MIN_ANGLE) -> Triangle:
    """Uniform vertices in [-span, span]^2, redrawn until every angle is >= min_angle"""
    while True:
        T = Triangle.of(rng.uniform(-span, span, size=(3, 2)).tolist())
        if not is_degenerate(T) and min(interior_angles(T)) >= min_angle:
            return T


def random_instance(rng: np.random.Generator, min_angle: float = MIN_ANGLE) -> Tuple[Triangle, Triangle]:
    """(robots, pattern); the pattern lives at an unrelated position and scale"""
    robots = random_triangle(rng, ROBOT_SPAN, min_angle)
    pattern = random_triangle(rng, float(rng.uniform(0.5, 5.0)), min_angle)
    return robots, pattern


def instances(n: int, seed: int, min_angle: float = MIN_ANGLE) -> Iterator[Tuple[Triangle, Triangle]]:
    """n reproducible instances from numpy's default generator"""
    rng = np.random.default_rng(seed)
    for _ in range(n):
        yield random_instance(rng, min_angle)
