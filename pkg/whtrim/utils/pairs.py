"""
JSON codec for closed-loop pair files.

File format:
    {
        "name": "plant-1",
        "dim": 2,
        "phi_hit": [[0.5, 0.1], [0.0, 0.4]],
        "phi_miss": [[1.0, 0.0], [0.0, 1.0]]
    }
"""

import json
import math
import os
from typing import Any, List, Optional

import numpy as np

from whtrim.jsr import ClosedLoopPair, JsrError


class PairFormatError(Exception):
    """Raised when a pair file is missing or malformed."""

    def __init__(self, message: str, field: Optional[str] = None, line: Optional[int] = None):
        self.field = field
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field '{field}'")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)


def _matrix(data: Any, field: str, dim: int) -> np.ndarray:
    if not isinstance(data, list) or len(data) != dim:
        raise PairFormatError(f"expected {dim} rows", field=field)
    rows: List[List[float]] = []
    for i, row in enumerate(data):
        if not isinstance(row, list) or len(row) != dim:
            raise PairFormatError(f"expected {dim} columns", field=f"{field}[{i}]")
        values = []
        for j, value in enumerate(row):
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise PairFormatError("expected a number", field=f"{field}[{i}][{j}]")
            if not math.isfinite(value):
                raise PairFormatError("expected a finite number", field=f"{field}[{i}][{j}]")
            values.append(float(value))
        rows.append(values)
    return np.array(rows, dtype=np.float64)


def parse_pair(text: str) -> ClosedLoopPair:
    """
    Parse the JSON text of a pair file.

    Raises:
        PairFormatError: With the offending line or field
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise PairFormatError(f"invalid JSON ({e.msg})", line=e.lineno)

    if not isinstance(data, dict):
        raise PairFormatError("top-level value must be an object")
    for key in ("name", "dim", "phi_hit", "phi_miss"):
        if key not in data:
            raise PairFormatError("missing required field", field=key)

    name = data["name"]
    if not isinstance(name, str) or not name:
        raise PairFormatError("expected a non-empty string", field="name")
    dim = data["dim"]
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise PairFormatError("expected a positive integer", field="dim")

    phi_hit = _matrix(data["phi_hit"], "phi_hit", dim)
    phi_miss = _matrix(data["phi_miss"], "phi_miss", dim)
    try:
        return ClosedLoopPair(name, phi_hit, phi_miss)
    except JsrError as e:
        raise PairFormatError(str(e), field="dim")


def load_pair(path: str) -> ClosedLoopPair:
    """
    Load a closed-loop pair from a JSON file.

    Raises:
        PairFormatError: If the file is missing or malformed
    """
    if not os.path.exists(path):
        raise PairFormatError(f"Pair file not found: {path}")
    try:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except OSError as e:
        raise PairFormatError(f"Failed to read pair file: {e}")
    return parse_pair(text)


def dump_pair(pair: ClosedLoopPair) -> str:
    """Serialize a pair to JSON text (stable key order, trailing newline)."""
    data = {
        "name": pair.name,
        "dim": pair.dim,
        "phi_hit": pair.phi_hit.tolist(),
        "phi_miss": pair.phi_miss.tolist(),
    }
    return json.dumps(data, indent=2) + "\n"


def save_pair(pair: ClosedLoopPair, path: str) -> None:
    """
    Write a pair file.

    Raises:
        PairFormatError: If the file cannot be written
    """
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(dump_pair(pair))
    except OSError as e:
        raise PairFormatError(f"Failed to write pair file: {e}")
