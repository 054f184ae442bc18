import os
from typing import TypedDict, Optional
from dotenv import load_dotenv


DEFAULT_METRIC_CONFIG = os.path.join(os.path.dirname(__file__), "metric_defaults.yaml")


class ToolkitEnvironment(TypedDict):
    # Exact-arithmetic bounds
    POINT_GROUP_BOUND: int
    FACTOR_DEGREE_CAP: int
    PROBE_BUDGET: int

    # Numeric verification
    METRIC_CONFIG_PATH: str

    # Logging
    LOG_LEVEL: str

    # Observability Configuration
    TRACING_ENABLED: bool
    OTEL_SERVICE_NAME: str
    OTEL_EXPORTER_OTLP_ENDPOINT: str
    OTEL_EXPORTER_OTLP_HEADERS: Optional[str]


def _flag(raw: Optional[str]) -> bool:
    return (raw or "").strip().lower() in ("1", "true", "yes", "on")


def load_env_config() -> ToolkitEnvironment:
    # Ensure .env file is loaded before accessing variables
    load_dotenv()
    return ToolkitEnvironment(
        # Exact-arithmetic Vars
        POINT_GROUP_BOUND=int(os.environ.get("FLATCOLLAPSE_POINT_GROUP_BOUND", "3840")),
        FACTOR_DEGREE_CAP=int(os.environ.get("FLATCOLLAPSE_FACTOR_DEGREE_CAP", "12")),
        PROBE_BUDGET=int(os.environ.get("FLATCOLLAPSE_PROBE_BUDGET", "5")),

        # Numeric Vars
        METRIC_CONFIG_PATH=os.environ.get("FLATCOLLAPSE_METRIC_CONFIG", DEFAULT_METRIC_CONFIG),

        # Logging Vars
        LOG_LEVEL=os.environ.get("FLATCOLLAPSE_LOG_LEVEL", "WARNING"),

        # OpenTel Vars
        TRACING_ENABLED=_flag(os.environ.get("FLATCOLLAPSE_TRACING")),
        OTEL_SERVICE_NAME=os.environ.get("OTEL_SERVICE_NAME", "flatcollapse"),
        OTEL_EXPORTER_OTLP_ENDPOINT=os.environ.get("OTEL_EXPORTER_OTLP_ENDPOINT", "http://localhost:4318"),
        OTEL_EXPORTER_OTLP_HEADERS=os.getenv("OTEL_EXPORTER_OTLP_HEADERS"),
    )


_env_cache: Optional[ToolkitEnvironment] = None


def get_toolkit_config() -> ToolkitEnvironment:
    """Get the environment configuration (cached)"""
    global _env_cache

    if _env_cache is None:
        _env_cache = load_env_config()

    return _env_cache


def reload_toolkit_config() -> ToolkitEnvironment:
    """Re-read the environment, e.g. after a test changed it"""
    global _env_cache
    _env_cache = load_env_config()
    return _env_cache
