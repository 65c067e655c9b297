"""
Unit tests for pair files and the synthetic pair generator.
"""

import json

import numpy as np
import pytest

from whtrim.jsr import ClosedLoopPair
from whtrim.linalg import spectral_radius
from whtrim.utils import (
    MissStrategy,
    PairFormatError,
    PairGenerator,
    dump_pair,
    generate_pair,
    load_pair,
    parse_pair,
    save_pair,
)

VALID = {
    "name": "plant-1",
    "dim": 2,
    "phi_hit": [[0.5, 0.1], [0.0, 0.4]],
    "phi_miss": [[1.0, 0.0], [0.0, 1.0]],
}


def document(**changes):
    data = dict(VALID)
    data.update(changes)
    return json.dumps(data)


class TestParsePair:
    """Tests for pair file parsing."""

    def test_valid(self):
        """Should build a ClosedLoopPair."""
        pair = parse_pair(json.dumps(VALID))
        assert pair.name == "plant-1"
        assert pair.dim == 2
        assert pair.phi_hit[0, 1] == 0.1
        assert np.array_equal(pair.phi_miss, np.eye(2))

    def test_integers_accepted(self):
        """Integer entries are read as floats."""
        pair = parse_pair(document(dim=1, phi_hit=[[1]], phi_miss=[[0]]))
        assert pair.phi_hit.dtype == np.float64

    def test_invalid_json_reports_line(self):
        """Should report the line of a syntax error."""
        with pytest.raises(PairFormatError) as exc_info:
            parse_pair('{\n  "name": "x",\n  oops\n}')
        assert exc_info.value.line == 3
        assert "line 3" in str(exc_info.value)

    @pytest.mark.parametrize("field", ["name", "dim", "phi_hit", "phi_miss"])
    def test_missing_field(self, field):
        """Should name the missing field."""
        data = dict(VALID)
        del data[field]
        with pytest.raises(PairFormatError) as exc_info:
            parse_pair(json.dumps(data))
        assert exc_info.value.field == field

    def test_not_an_object(self):
        """Top-level arrays are rejected."""
        with pytest.raises(PairFormatError):
            parse_pair("[1, 2]")

    def test_bad_dim(self):
        """dim must be a positive integer."""
        for dim in (0, -1, 1.5, True, "2"):
            with pytest.raises(PairFormatError) as exc_info:
                parse_pair(document(dim=dim))
            assert exc_info.value.field == "dim"

    def test_empty_name(self):
        """name must be non-empty."""
        with pytest.raises(PairFormatError) as exc_info:
            parse_pair(document(name=""))
        assert exc_info.value.field == "name"

    def test_wrong_row_count(self):
        """Row count must equal dim."""
        with pytest.raises(PairFormatError) as exc_info:
            parse_pair(document(phi_hit=[[0.5, 0.1]]))
        assert exc_info.value.field == "phi_hit"

    def test_wrong_column_count(self):
        """Column count must equal dim."""
        with pytest.raises(PairFormatError) as exc_info:
            parse_pair(document(phi_miss=[[1.0, 0.0, 0.0], [0.0, 1.0]]))
        assert exc_info.value.field == "phi_miss[0]"

    def test_non_numeric_entry(self):
        """Entries must be numbers."""
        with pytest.raises(PairFormatError) as exc_info:
            parse_pair(document(phi_hit=[[0.5, "x"], [0.0, 0.4]]))
        assert exc_info.value.field == "phi_hit[0][1]"


class TestLoadSave:
    """Tests for pair file I/O."""

    def test_missing_file(self, tmp_path):
        """Should raise PairFormatError when the file does not exist."""
        with pytest.raises(PairFormatError, match="not found"):
            load_pair(str(tmp_path / "nope.json"))

    def test_save_and_load(self, tmp_path):
        """A saved pair is loaded back unchanged."""
        pair = ClosedLoopPair("p", np.array([[0.3, 1.0], [0.0, 0.2]]), np.eye(2))
        path = tmp_path / "p.json"
        save_pair(pair, str(path))
        loaded = load_pair(str(path))
        assert loaded.name == "p"
        assert np.array_equal(loaded.phi_hit, pair.phi_hit)
        assert np.array_equal(loaded.phi_miss, pair.phi_miss)

    def test_dump_format(self):
        """Dumped text has the documented keys and a trailing newline."""
        text = dump_pair(parse_pair(json.dumps(VALID)))
        assert text.endswith("}\n")
        assert list(json.loads(text)) == ["name", "dim", "phi_hit", "phi_miss"]


class TestPairGenerator:
    """Tests for synthetic pair generation."""

    @pytest.mark.parametrize("dim", [1, 2, 5, 10])
    def test_target_spectral_radius(self, dim):
        """phi_hit is scaled to the requested spectral radius."""
        pair = generate_pair(seed=11, dim=dim, target_sr=0.83)
        assert pair.dim == dim
        assert spectral_radius(pair.phi_hit) == pytest.approx(0.83, rel=1e-8)

    def test_deterministic(self):
        """Same seed gives the same pair."""
        first = generate_pair(seed=5, dim=3)
        second = generate_pair(seed=5, dim=3)
        assert np.array_equal(first.phi_hit, second.phi_hit)
        assert not np.array_equal(first.phi_hit, generate_pair(seed=6, dim=3).phi_hit)

    def test_hold_strategy(self):
        """Hold keeps the last coordinate and reuses the other rows."""
        pair = generate_pair(seed=2, dim=3, strategy=MissStrategy.HOLD)
        assert np.array_equal(pair.phi_miss[-1], [0.0, 0.0, 1.0])
        assert np.array_equal(pair.phi_miss[:-1], pair.phi_hit[:-1])

    def test_zero_strategy(self):
        """Zero clears the last row."""
        pair = generate_pair(seed=2, dim=3, strategy=MissStrategy.ZERO)
        assert not pair.phi_miss[-1].any()

    def test_default_name(self):
        """Name is derived from seed, dim and strategy."""
        assert generate_pair(seed=4, dim=2).name == "gen-s4-d2-hold"
        assert generate_pair(seed=4, name="mine").name == "mine"

    @pytest.mark.parametrize("dim,sr", [(0, 0.5), (11, 0.5), (2, 0.0), (2, 1.1)])
    def test_invalid_options(self, dim, sr):
        """Should reject out-of-range options."""
        with pytest.raises(ValueError):
            PairGenerator(dim=dim, target_sr=sr)
