"""
Tests for JSON and CSV output formatting.
"""

import csv
import io
import json
import math

from whtrim.automata import build_minimal
from whtrim.jsr import IterationSnapshot, JsrResult, Representation, Verdict
from whtrim.language import GrowthEstimate
from whtrim.utils import (
    GROWTH_HEADER,
    HISTORY_HEADER,
    SWEEP_HEADER,
    VERIFY_HEADER,
    JSONOutput,
    build_success,
    format_bound,
    format_growth,
    growth_row,
    history_rows,
    sweep_row,
    to_csv,
    verify_row,
    verify_success,
)


def make_result(verdict=Verdict.CERTIFIED_STABLE, upper=0.75):
    history = (
        IterationSnapshot(0, 0.5, math.inf, 1, 0, 0, 0, 0.0),
        IterationSnapshot(1, 0.5, upper, 2, 2, 30, 30, 0.0126),
    )
    return JsrResult(
        lower=0.5,
        upper=upper,
        iterations=1,
        stored_entries=30,
        verdict=verdict,
        delta=1e-3,
        representation=Representation.FACTORED,
        peak_entries=30,
        history=history,
    )


class TestJSONOutput:
    """Test JSONOutput class methods."""

    def test_success_basic(self):
        """Should format basic success response."""
        result = json.loads(JSONOutput.success({"key": "value"}))
        assert result == {"status": "success", "data": {"key": "value"}}

    def test_success_extra_fields(self):
        """Should include additional top-level fields."""
        result = json.loads(JSONOutput.success({}, warnings=["slow"]))
        assert result["warnings"] == ["slow"]

    def test_error(self):
        """Should format error response with type."""
        result = json.loads(JSONOutput.error("bad pair", error_type="format", line=3))
        assert result["status"] == "error"
        assert result["error_type"] == "format"
        assert result["message"] == "bad pair"
        assert result["line"] == 3

    def test_error_default_type(self):
        """Should default error_type to 'error'."""
        assert json.loads(JSONOutput.error("x"))["error_type"] == "error"


class TestCommandHelpers:
    """Tests for per-command JSON payloads."""

    def test_build_success(self):
        """Should describe the built automaton."""
        automaton = build_minimal(2, 5)
        data = json.loads(build_success(automaton, "a.csv", "csv"))["data"]
        assert data["automaton"] == automaton.name
        assert data["states"] == 10
        assert data["transitions"] == automaton.num_transitions
        assert data["format"] == "csv"
        assert data["output_path"] == "a.csv"

    def test_verify_success(self):
        """Should report verdict and bounds."""
        data = json.loads(verify_success("p", "trim:2:5:3", 7, make_result()))["data"]
        assert data["verdict"] == "CertifiedStable"
        assert data["lower"] == 0.5
        assert data["upper"] == 0.75
        assert data["states"] == 7
        assert data["representation"] == "factored"

    def test_verify_infinite_upper_is_null(self):
        """Unbounded upper bounds become null."""
        result = make_result(Verdict.LOWER_BOUND_AT_LEAST_ONE, upper=math.inf)
        data = json.loads(verify_success("p", "anymiss:2:5", 10, result))["data"]
        assert data["upper"] is None
        assert data["verdict"] == "LowerBoundAtLeastOne"


class TestCSVOutput:
    """Tests for result tables."""

    def test_format_bound(self):
        """12 significant digits, infinities spelled out."""
        assert format_bound(1 / 3) == "0.333333333333"
        assert format_bound(math.inf) == "inf"
        assert format_bound(-math.inf) == "-inf"

    def test_format_growth(self):
        """Three decimals."""
        assert format_growth(7.05312) == "7.053"

    def test_to_csv_lf(self):
        """Header first, LF line endings."""
        text = to_csv(("a", "b"), [[1, 2], [3, 4]])
        assert text == "a,b\n1,2\n3,4\n"

    def test_verify_row(self):
        """Row matches the verify header."""
        row = verify_row("p", "anymiss:2:5", 10, make_result())
        assert len(row) == len(VERIFY_HEADER)
        assert row[3] == "CertifiedStable"
        assert row[4] == "0.5"
        assert row[5] == "0.75"

    def test_sweep_row(self):
        """Sweep rows end with an empty error column."""
        row = sweep_row(3, 7, make_result())
        assert len(row) == len(SWEEP_HEADER)
        assert row[0] == 3
        assert row[-1] == ""

    def test_growth_row(self):
        """Growth constants are rounded to three decimals."""
        row = growth_row(GrowthEstimate(a=7.05312, lambda_=1.15068, source="s", states=630))
        assert row == ["s", 630, "7.053", "1.151"]
        assert len(row) == len(GROWTH_HEADER)

    def test_history_rows(self):
        """One iter,space,time row per snapshot."""
        text = to_csv(HISTORY_HEADER, history_rows(make_result()))
        rows = list(csv.reader(io.StringIO(text)))
        assert rows[0] == ["iter", "space", "time"]
        assert rows[1] == ["0", "0", "0.000"]
        assert rows[2] == ["1", "30", "0.013"]
