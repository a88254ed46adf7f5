#!/usr/bin/env python3
"""
Toolkit Settings
Loads config/formation.toml, applies .env and environment overrides and
validates the result
"""

import logging
import os
from pathlib import Path
from typing import Any, Dict, Optional

import tomli
from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError, field_validator

from services.errors import ConfigError
from services.oracle import OracleGrid

logger = logging.getLogger(__name__)

# Default configuration file
config_path = Path(__file__).parent.parent / "config" / "formation.toml"

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class ToleranceSettings(BaseModel):
    similarity: float = Field(1e-9, gt=0, description="Sorted-angle similarity check (radians)")
    discrepancy: float = Field(1e-6, gt=0, description="Relative solver/oracle disagreement accepted by verify")
    equal_travel: float = Field(1e-12, gt=0, description="Relative spread of the three per-robot travels")
    assignment_slack: float = Field(1e-12, ge=0, description="Slack (times scale) for the assignment check")


class SimulationSettings(BaseModel):
    max_cycles: int = Field(10 ** 6, gt=0)
    arrival_tol: float = Field(1e-12, gt=0)


class VerifySettings(BaseModel):
    instances: int = Field(100, gt=0)
    seed: int = 0
    min_angle: float = Field(0.05, gt=0, lt=1.0)


class LoggingSettings(BaseModel):
    level: str = "INFO"

    @field_validator("level")
    @classmethod
    def _known_level(cls, v: str) -> str:
        level = v.strip().upper()
        if level not in LOG_LEVELS:
            raise ValueError(f"unknown log level '{v}'")
        return level


class Settings(BaseModel):
    tolerances: ToleranceSettings = ToleranceSettings()
    oracle: OracleGrid = OracleGrid()
    simulation: SimulationSettings = SimulationSettings()
    verify: VerifySettings = VerifySettings()
    logging: LoggingSettings = LoggingSettings()
    # FORMATION_TOLERANCE; each command decides which tolerance it replaces
    tolerance_override: Optional[float] = Field(None, gt=0)
    source: Optional[str] = None


def _load_config(path: Path) -> Dict[str, Any]:
    """Load configuration from TOML"""
    if not path.exists():
        logger.warning(f"Config not found at {path}, using defaults")
        return {}

    try:
        with open(path, "rb") as f:
            return tomli.load(f)
    except tomli.TOMLDecodeError as e:
        raise ConfigError(f"invalid TOML in {path}: {e}") from e


def _apply_env(data: Dict[str, Any]) -> Dict[str, Any]:
    """Environment variables win over the file"""
    tolerance = os.environ.get("FORMATION_TOLERANCE")
    if tolerance:
        data["tolerance_override"] = tolerance

    level = os.environ.get("FORMATION_LOG_LEVEL")
    if level:
        data.setdefault("logging", {})["level"] = level

    seed = os.environ.get("FORMATION_VERIFY_SEED")
    if seed:
        data.setdefault("verify", {})["seed"] = seed
    return data


def load_settings(path: Optional[Path] = None) -> Settings:
    """
    Build settings from file and environment.

    Args:
        path: Config file; defaults to FORMATION_CONFIG, then config/formation.toml

    Returns:
        Validated settings
    """
    load_dotenv()
    if path is None:
        path = Path(os.environ.get("FORMATION_CONFIG", config_path))
    data = _apply_env(_load_config(Path(path)))
    data["source"] = str(path)

    try:
        settings = Settings.model_validate(data)
    except ValidationError as e:
        raise ConfigError(f"invalid configuration ({path}): {e}") from e

    logger.debug(f"Settings loaded from {path}")
    return settings


# Singleton instance
_settings: Optional[Settings] = None


def get_settings() -> Settings:
    """Get singleton settings instance"""
    global _settings
    if _settings is None:
        _settings = load_settings()
    return _settings


def reload_settings(path: Optional[Path] = None) -> Settings:
    """Re-read configuration, replacing the singleton"""
    global _settings
    _settings = load_settings(path)
    return _settings
