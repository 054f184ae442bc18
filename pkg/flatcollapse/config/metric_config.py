"""
Metric verification configuration for flatcollapse.
Loads the YAML defaults and validates them with pydantic.
"""

import os
import logging
from typing import List, Optional

import yaml
from pydantic import BaseModel, Field, field_validator

from .toolkit_config import DEFAULT_METRIC_CONFIG, get_toolkit_config

log = logging.getLogger("metric_config")


class GridSettings(BaseModel):
    """Sampling grid for diameter estimates"""
    min_points: int = 200
    max_refinements: int = 3

    @field_validator("min_points", "max_refinements")
    @classmethod
    def _non_negative(cls, value: int) -> int:
        if value < 0:
            raise ValueError("grid settings must be non-negative")
        return value


class MetricConfig(BaseModel):
    """Settings for flat distances, diameters and the collapse report"""
    s_values: List[float] = Field(default_factory=lambda: [1.0, 0.5, 0.25, 0.125, 0.0625])
    pair_count: int = 64
    enum_radius: float = 4.0
    tol: float = 1e-6
    seed: int = 7
    grid: GridSettings = Field(default_factory=GridSettings)

    @field_validator("s_values")
    @classmethod
    def _s_in_unit_interval(cls, values: List[float]) -> List[float]:
        if not values:
            raise ValueError("s_values must not be empty")
        for s in values:
            if not 0.0 < s <= 1.0:
                raise ValueError(f"scale {s} outside (0, 1]")
        return values

    @field_validator("pair_count")
    @classmethod
    def _positive_pairs(cls, value: int) -> int:
        if value < 1:
            raise ValueError("pair_count must be at least 1")
        return value

    @field_validator("enum_radius", "tol")
    @classmethod
    def _positive(cls, value: float) -> float:
        if value <= 0:
            raise ValueError("enum_radius and tol must be positive")
        return value

    def with_overrides(self, **overrides) -> "MetricConfig":
        """Return a revalidated copy with non-None overrides applied"""
        data = self.model_dump()
        data.update({k: v for k, v in overrides.items() if v is not None})
        return MetricConfig(**data)


class MetricConfigFile(BaseModel):
    version: str
    metric: MetricConfig


def load_metric_config(config_path: Optional[str] = None) -> MetricConfig:
    """
    Load and validate the metric configuration from a YAML file.
    Falls back to the packaged defaults when the path does not exist.
    """
    config_path = config_path or get_toolkit_config()["METRIC_CONFIG_PATH"]

    if not os.path.exists(config_path):
        alt_paths = [
            "metric_config.yaml",
            DEFAULT_METRIC_CONFIG,
        ]
        for alt_path in alt_paths:
            if os.path.exists(alt_path):
                log.warning(f"Metric config {config_path} not found, using {alt_path}")
                config_path = alt_path
                break
        else:
            raise FileNotFoundError(f"Metric config file not found: {config_path}")

    try:
        with open(config_path, "r") as f:
            raw_config = yaml.safe_load(f)

        if not raw_config:
            raise ValueError("Metric config file is empty")

        log.info(f"Loaded metric config from: {config_path}")

    except yaml.YAMLError as e:
        raise ValueError(f"Invalid YAML in metric config: {e}")
    except ValueError:
        raise
    except Exception as e:
        raise RuntimeError(f"Failed to load metric config: {e}")

    try:
        parsed = MetricConfigFile(**raw_config)
    except Exception as e:
        log.error(f"Metric config validation failed: {e}")
        raise ValueError(f"Invalid metric config: {e}")

    log.info(f"Metric config validated successfully (version: {parsed.version})")
    _log_config_summary(parsed.metric)
    return parsed.metric


def _log_config_summary(config: MetricConfig):
    """Log summary of validated configuration"""
    log.info("=== METRIC CONFIG ===")
    log.info(f"Scales: {config.s_values}")
    log.info(f"Pairs per scale: {config.pair_count}")
    log.info(f"Enumeration radius: {config.enum_radius}")
    log.info(f"Tolerance: {config.tol:g}")
    log.info(f"Seed: {config.seed}")
    log.info(f"Grid: >= {config.grid.min_points} points, {config.grid.max_refinements} refinements")
    log.info("=" * 21)


# Global config cache
_config_cache: Optional[MetricConfig] = None


def get_metric_config() -> MetricConfig:
    """Get the global metric configuration (cached)"""
    global _config_cache

    if _config_cache is None:
        _config_cache = load_metric_config()

    return _config_cache


def reload_metric_config() -> MetricConfig:
    """Reload the metric configuration from file"""
    global _config_cache
    _config_cache = load_metric_config()
    return _config_cache


def validate_metric_config_file(config_path: str) -> List[str]:
    """Validate a metric configuration file and return any errors"""
    errors = []

    try:
        load_metric_config(config_path)
        log.info("Metric configuration validation passed")

    except FileNotFoundError as e:
        errors.append(f"Config file not found: {e}")
    except ValueError as e:
        errors.append(f"Validation error: {e}")
    except Exception as e:
        errors.append(f"Unexpected error: {e}")

    return errors
