#!/usr/bin/env python3
"""
Formation Errors
Exception hierarchy shared by the library modules and the command-line front end
"""

from typing import Optional


class FormationError(Exception):
    """Base class for every error the toolkit raises on purpose"""

    exit_code: int = 1


class DegenerateTriangle(FormationError):
    """A triangle has (nearly) coincident or collinear vertices"""

    exit_code = 3

    def __init__(self, label: str = "triangle", detail: Optional[str] = None):
        self.label = label
        message = f"degenerate {label}"
        if detail:
            message += f": {detail}"
        super().__init__(message)


class CoincidentAnchors(FormationError):
    """Replication anchors u and v are the same point"""

    exit_code = 3


class CoincidentTarget(FormationError):
    """A robot's target t_i coincides with it while the travel is positive"""

    exit_code = 3


class NoMovement(FormationError):
    """No robot moves, so the focal point is undefined"""

    exit_code = 3


class InvalidAngles(FormationError):
    """An angle triple is not the sorted interior angles of a triangle"""

    exit_code = 2


class ScenarioError(FormationError):
    """A scenario or triangle file could not be parsed"""

    exit_code = 2


class CycleLimitExceeded(FormationError):
    """The simulation did not converge within max_cycles"""

    exit_code = 4

    def __init__(self, cycles: int):
        self.cycles = cycles
        super().__init__(f"simulation did not converge within {cycles} cycles")


class ConfigError(FormationError):
    """The configuration file or an environment override is invalid"""

    exit_code = 2
