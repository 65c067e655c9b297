"""
JSON output formatting for headless mode.

Provides structured JSON output for CLI commands to enable
automation and programmatic usage.
"""

import json
import math
from typing import Any, Dict

from whtrim.automata import Automaton
from whtrim.jsr import JsrResult


def _finite(value: float) -> Any:
    """JSON has no infinity; report unbounded values as null."""
    return value if math.isfinite(value) else None


class JSONOutput:
    """
    JSON output formatter for CLI commands.

    Provides consistent JSON structure across all commands:
    - Success: {"status": "success", "data": {...}}
    - Error: {"status": "error", "error_type": "...", "message": "..."}
    """

    @staticmethod
    def success(data: Dict[str, Any], **kwargs: Any) -> str:
        """
        Format success response.

        Args:
            data: Primary data payload
            **kwargs: Additional top-level fields

        Returns:
            JSON string
        """
        output = {"status": "success", "data": data}
        output.update(kwargs)
        return json.dumps(output, indent=2, ensure_ascii=False)

    @staticmethod
    def error(message: str, error_type: str = "error", **kwargs: Any) -> str:
        """
        Format error response.

        Args:
            message: Error message
            error_type: Error category (validation, budget, format, ...)
            **kwargs: Additional error context

        Returns:
            JSON string
        """
        output = {
            "status": "error",
            "error_type": error_type,
            "message": message,
        }
        output.update(kwargs)
        return json.dumps(output, indent=2, ensure_ascii=False)


def build_success(automaton: Automaton, output_path: str, fmt: str) -> str:
    """Format build command success."""
    return JSONOutput.success(
        {
            "automaton": automaton.name,
            "kind": automaton.kind.value,
            "states": automaton.num_states,
            "transitions": automaton.num_transitions,
            "critical": automaton.critical_count,
            "format": fmt,
            "output_path": output_path,
        }
    )


def verify_success(name: str, constraint: str, states: int, result: JsrResult) -> str:
    """Format verify command result (any verdict)."""
    return JSONOutput.success(
        {
            "name": name,
            "constraint": constraint,
            "states": states,
            "verdict": result.verdict.value,
            "lower": _finite(result.lower),
            "upper": _finite(result.upper),
            "iterations": result.iterations,
            "stored_entries": result.stored_entries,
            "peak_entries": result.peak_entries,
            "representation": result.representation.value,
            "delta": result.delta,
        }
    )
