# telemetry/trace_utils.py

import time
from functools import wraps
from typing import Any

from opentelemetry import trace
from opentelemetry.trace import Status, StatusCode

_MAX_ATTR = 1000


def _truncate(value: Any) -> str:
    text = str(value)
    if len(text) > _MAX_ATTR:
        text = text[:_MAX_ATTR] + "... [truncated]"
    return text


def track_operation(operation_name: str, operation_kind: str = "exact"):
    """
    A decorator to create OpenTelemetry spans around toolkit operations.
    Captures inputs, output size, latency and any errors.
    Without an installed tracer provider the spans are no-ops.
    """
    def decorator(func):
        @wraps(func)
        def wrapper(*args, **kwargs):
            tracer = trace.get_tracer(__name__)
            start_time = time.time()

            with tracer.start_as_current_span(f"flatcollapse.{operation_name}") as span:
                span.set_attribute("operation.name", operation_name)
                span.set_attribute("operation.kind", operation_kind)
                if kwargs:
                    span.set_attribute("operation.input", _truncate(kwargs))

                try:
                    result = func(*args, **kwargs)
                    span.set_attribute("operation.latency_ms", (time.time() - start_time) * 1000)
                    if result is not None:
                        span.set_attribute("operation.output_length", len(str(result)))
                    span.set_status(Status(StatusCode.OK))
                    return result

                except Exception as e:
                    span.set_attribute("operation.latency_ms", (time.time() - start_time) * 1000)
                    span.record_exception(e)
                    span.set_status(Status(StatusCode.ERROR, str(e)))
                    span.set_attribute("operation.error_type", type(e).__name__)
                    raise

        return wrapper

    return decorator
