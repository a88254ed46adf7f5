#!/usr/bin/env python3
"""
Scenario Files
JSON scenario and triangle file parsing for the command-line front end
"""

import json
import logging
from pathlib import Path
from typing import Annotated, Any, List, Optional, Tuple, Union

from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, ValidationError

from config.pattern_presets import get_pattern_preset
from services.errors import ScenarioError
from services.geometry import Triangle, require_nondegenerate

logger = logging.getLogger(__name__)

Coordinate = Annotated[float, Field(allow_inf_nan=False)]
TrianglePoints = Annotated[List[Tuple[Coordinate, Coordinate]], Field(min_length=3, max_length=3)]


def _resolve_preset(value: Any) -> Any:
    if isinstance(value, str):
        points = get_pattern_preset(value)
        if points is None:
            raise ValueError(f"unknown pattern preset '{value}'")
        return points
    return value


PresetOrPoints = Annotated[TrianglePoints, BeforeValidator(_resolve_preset)]


class SimSection(BaseModel):
    model_config = ConfigDict(extra="forbid")

    step: Optional[float] = Field(None, gt=0)
    max_cycles: Optional[int] = Field(None, gt=0)


class Scenario(BaseModel):
    """
    Robots and pattern for one formation problem.

    robots: three [x, y] pairs
    pattern: three [x, y] pairs, or the name of a preset
    """
    model_config = ConfigDict(extra="forbid")

    name: Optional[str] = None
    description: Optional[str] = None
    robots: TrianglePoints
    pattern: PresetOrPoints
    seed: Optional[int] = Field(None, description="Informational seed recorded with the scenario")
    sim: Optional[SimSection] = None

    def robots_triangle(self) -> Triangle:
        return Triangle.of(self.robots)

    def pattern_triangle(self) -> Triangle:
        return Triangle.of(self.pattern)


class TriangleFile(BaseModel):
    model_config = ConfigDict(extra="forbid")

    triangle: PresetOrPoints


def _read_json(path: Union[str, Path]) -> Any:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ScenarioError(f"cannot read {path}: {e.strerror or e}") from e
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        # A bare preset name is accepted without JSON quoting
        stripped = text.strip()
        if stripped and get_pattern_preset(stripped) is not None:
            return stripped
        raise ScenarioError(f"{path}: invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from e


def load_scenario(path: Union[str, Path]) -> Scenario:
    """Parse and validate a scenario file; degenerate triangles raise DegenerateTriangle"""
    data = _read_json(path)
    try:
        scenario = Scenario.model_validate(data)
    except ValidationError as e:
        raise ScenarioError(f"{path}: {e}") from e

    require_nondegenerate(scenario.robots_triangle(), "robots")
    require_nondegenerate(scenario.pattern_triangle(), "pattern")
    seed = f" (seed {scenario.seed})" if scenario.seed is not None else ""
    logger.info(f"Loaded scenario {scenario.name or Path(path).name}{seed}")
    return scenario


def load_triangle(path: Union[str, Path]) -> Triangle:
    """
    Parse a triangle file.

    Accepted forms: [[x, y], [x, y], [x, y]], {"triangle": [...]} or the
    name of a pattern preset.
    """
    data = _read_json(path)
    if not isinstance(data, dict):
        data = {"triangle": data}
    try:
        parsed = TriangleFile.model_validate(data)
    except ValidationError as e:
        raise ScenarioError(f"{path}: {e}") from e
    return require_nondegenerate(Triangle.of(parsed.triangle), Path(path).name)


def scenario_triangles(scenario: Scenario) -> Tuple[Triangle, Triangle]:
    return scenario.robots_triangle(), scenario.pattern_triangle()
