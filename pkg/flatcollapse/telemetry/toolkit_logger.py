# telemetry/toolkit_logger.py
"""
Dedicated logging class for command-level toolkit events.
Keeps the CLI handlers free of logging details.
"""

import logging
from typing import Any, Dict, List


class ToolkitLogger:
    """Handles all logging for CLI runs."""

    def __init__(self, logger_name: str = "flatcollapse"):
        self.log = logging.getLogger(logger_name)

    def log_command_start(self, command: str, inputs: List[str]):
        """Log the start of a command."""
        self.log.info(f"Running '{command}' on {inputs}")

    def log_inputs_digest(self, digest: str):
        """Log the digest of the input files."""
        self.log.debug(f"Inputs digest: {digest}")

    def log_group_loaded(self, dim: int, order: int, generators: int):
        """Log a validated group."""
        self.log.info(f"Validated group: dim={dim}, |H|={order}, generators={generators}")

    def log_subspace_loaded(self, dim: int, ambient: int, algebraic: bool):
        kind = "algebraic" if algebraic else "rational"
        self.log.info(f"Loaded {kind} subspace of dim {dim} in R^{ambient}")

    def log_outcome(self, command: str, exit_code: int, payload: Dict[str, Any]):
        """Log command completion."""
        self.log.info(f"'{command}' finished with exit code {exit_code} ({len(payload)} payload keys)")

    def log_inconclusive(self, command: str, reason: str):
        """Log a budget-limited or radius-limited outcome."""
        self.log.warning(f"'{command}' inconclusive: {reason}")

    def log_failure(self, command: str, error: Exception):
        """Log a failed command."""
        self.log.error(f"'{command}' failed: {type(error).__name__}: {error}")

    def log_csv_written(self, path: str, rows: int):
        self.log.info(f"Wrote {rows} CSV rows to {path}")
