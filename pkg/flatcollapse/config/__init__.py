from .toolkit_config import ToolkitEnvironment, get_toolkit_config, load_env_config, reload_toolkit_config
from .metric_config import (
    GridSettings,
    MetricConfig,
    get_metric_config,
    load_metric_config,
    reload_metric_config,
    validate_metric_config_file,
)

__all__ = [
    "ToolkitEnvironment",
    "get_toolkit_config",
    "load_env_config",
    "reload_toolkit_config",
    "GridSettings",
    "MetricConfig",
    "get_metric_config",
    "load_metric_config",
    "reload_metric_config",
    "validate_metric_config_file",
]
