# telemetry/_telemetry.py
"""
OpenTelemetry setup for the command line. Spans from track_operation are
no-ops until init_tracing() installs a provider, which the CLI does only
when FLATCOLLAPSE_TRACING is on.
"""

import atexit
import logging
from typing import Dict, Optional

from opentelemetry import trace
from opentelemetry.exporter.otlp.proto.http.trace_exporter import OTLPSpanExporter
from opentelemetry.sdk.resources import Resource
from opentelemetry.sdk.trace import TracerProvider
from opentelemetry.sdk.trace.export import BatchSpanProcessor

from ..config.toolkit_config import ToolkitEnvironment, get_toolkit_config

log = logging.getLogger("telemetry")

_provider: Optional[TracerProvider] = None


def _parse_headers(raw: Optional[str]) -> Dict[str, str]:
    """OTEL_EXPORTER_OTLP_HEADERS as a dict: "a=1, b=2" -> {"a": "1", "b": "2"}."""
    if not raw:
        return {}
    entries = (item.partition("=") for item in raw.split(","))
    return {key.strip(): value.strip() for key, sep, value in entries if sep and key.strip()}


def init_tracing(env: Optional[ToolkitEnvironment] = None) -> TracerProvider:
    """Install a global tracer provider exporting over OTLP/HTTP; repeated calls reuse it."""
    global _provider
    if _provider is not None:
        return _provider

    env = env or get_toolkit_config()
    traces_url = f"{env['OTEL_EXPORTER_OTLP_ENDPOINT'].rstrip('/')}/v1/traces"
    provider = TracerProvider(resource=Resource.create({"service.name": env["OTEL_SERVICE_NAME"]}))
    provider.add_span_processor(
        BatchSpanProcessor(
            OTLPSpanExporter(
                endpoint=traces_url,
                headers=_parse_headers(env["OTEL_EXPORTER_OTLP_HEADERS"]) or None,
                timeout=10,
            )
        )
    )
    trace.set_tracer_provider(provider)
    # flush pending spans before the process exits
    atexit.register(provider.shutdown)

    log.info(f"tracing to {traces_url} as {env['OTEL_SERVICE_NAME']}")
    _provider = provider
    return provider
