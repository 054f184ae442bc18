from ._telemetry import init_tracing
from .toolkit_logger import ToolkitLogger
from .trace_utils import track_operation

__all__ = ["init_tracing", "ToolkitLogger", "track_operation"]
