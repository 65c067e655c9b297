"""
CSV formatting for command results.

All tables use a header row, comma separators and LF line endings.
"""

import csv
import io
import math
from typing import Any, Iterable, Sequence

from whtrim.jsr import JsrResult
from whtrim.language import GrowthEstimate

VERIFY_HEADER = (
    "name",
    "constraint",
    "states",
    "verdict",
    "lower",
    "upper",
    "iterations",
    "stored_entries",
    "representation",
    "delta",
)
SWEEP_HEADER = ("c", "states", "verdict", "lower", "upper", "iterations", "stored_entries", "error")
GROWTH_HEADER = ("constraint", "states", "a", "lambda")
HISTORY_HEADER = ("iter", "space", "time")


def format_bound(value: float) -> str:
    """12 significant digits; infinities as inf."""
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return f"{value:.12g}"


def format_growth(value: float) -> str:
    """Three decimals."""
    return f"{value:.3f}"


def to_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    """Render a table as CSV text."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def verify_row(name: str, constraint: str, states: int, result: JsrResult) -> list:
    """One row of the verification result table."""
    return [
        name,
        constraint,
        states,
        result.verdict.value,
        format_bound(result.lower),
        format_bound(result.upper),
        result.iterations,
        result.stored_entries,
        result.representation.value,
        format_bound(result.delta),
    ]


def sweep_row(c: int, states: int, result: JsrResult) -> list:
    """One row of the compression sweep table."""
    return [
        c,
        states,
        result.verdict.value,
        format_bound(result.lower),
        format_bound(result.upper),
        result.iterations,
        result.stored_entries,
        "",
    ]


def growth_row(estimate: GrowthEstimate) -> list:
    """One row of the growth table."""
    return [
        estimate.source,
        estimate.states,
        format_growth(estimate.a),
        format_growth(estimate.lambda_),
    ]


def history_rows(result: JsrResult) -> list:
    """Per-iteration ``iter,space,time`` rows of a run."""
    return [
        [snap.iteration, snap.stored_entries, f"{snap.elapsed:.3f}"] for snap in result.history
    ]
