"""
Unit tests for CLI commands.
"""

import csv
import json

import numpy as np
import pytest
from click.testing import CliRunner

from whtrim.automata import build_isomorphic, state_count, to_csv
from whtrim.cli import main
from whtrim.jsr import ClosedLoopPair
from whtrim.utils import VERIFY_HEADER, load_pair, save_pair


@pytest.fixture
def runner():
    """Click CLI runner for testing."""
    return CliRunner()


@pytest.fixture
def pair_file(tmp_path):
    """Write a pair to a JSON file and return its path."""

    def write(pair: ClosedLoopPair) -> str:
        path = tmp_path / f"{pair.name}.json"
        save_pair(pair, str(path))
        return str(path)

    return write


def read_rows(path):
    with open(path, encoding="utf-8", newline="") as f:
        return list(csv.reader(f))


class TestBuildCommand:
    """Tests for build command."""

    def test_build_csv(self, runner, isolated_config, tmp_path):
        """Should write transitions and the label sidecar."""
        out = tmp_path / "a25.csv"
        result = runner.invoke(main, ["build", "--m", "2", "--k", "5", "-o", str(out)])

        assert result.exit_code == 0
        assert "states=10" in result.output
        rows = read_rows(out)
        assert rows[0] == ["src", "symbol", "dst"]
        labels = read_rows(tmp_path / "a25.labels.csv")
        assert labels[0] == ["index", "label"]
        assert len(labels) == 11

    def test_c_one_matches_h(self, runner, isolated_config, tmp_path):
        """T(2,5,1) exports the transitions of H(2,5)."""
        out = tmp_path / "t.csv"
        result = runner.invoke(main, ["build", "--m", "2", "--k", "5", "--c", "1", "-o", str(out)])

        assert result.exit_code == 0
        assert out.read_text(encoding="utf-8") == to_csv(build_isomorphic(2, 5))[0]

    def test_compressed_state_count(self, runner, isolated_config, tmp_path):
        """T(2,300,260) has 635 states."""
        out = tmp_path / "t.csv"
        result = runner.invoke(
            main, ["build", "--m", "2", "--k", "300", "--c", "260", "-o", str(out)]
        )

        assert result.exit_code == 0
        assert "states=635" in result.output

    def test_dot_format(self, runner, isolated_config, tmp_path):
        """Should write a DOT digraph."""
        out = tmp_path / "a.dot"
        result = runner.invoke(
            main, ["build", "--m", "2", "--k", "5", "--format", "dot", "-o", str(out)]
        )

        assert result.exit_code == 0
        assert out.read_text(encoding="utf-8").startswith("digraph")
        assert not (tmp_path / "a.labels.csv").exists()

    def test_json_summary(self, runner, isolated_config, tmp_path):
        """Should print a JSON summary."""
        out = tmp_path / "a.csv"
        result = runner.invoke(
            main, ["build", "--m", "2", "--k", "5", "-o", str(out), "--json"]
        )

        assert result.exit_code == 0
        data = json.loads(result.output)["data"]
        assert data["states"] == 10
        assert data["format"] == "csv"

    @pytest.mark.parametrize(
        "args",
        [
            ["--m", "5", "--k", "5"],
            ["--m", "0", "--k", "5"],
            ["--m", "2", "--k", "5", "--c", "0"],
        ],
    )
    def test_invalid_parameters(self, runner, isolated_config, args):
        """Should exit with 2 on invalid parameters."""
        result = runner.invoke(main, ["build", *args])

        assert result.exit_code == 2
        assert "Error" in result.output

    def test_state_budget(self, runner, isolated_config, monkeypatch):
        """Should exit with 3 when the budget is too small."""
        monkeypatch.setenv("WHTRIM_STATE_BUDGET", "5")
        result = runner.invoke(main, ["build", "--m", "2", "--k", "5"])

        assert result.exit_code == 3

    def test_state_budget_json(self, runner, isolated_config, monkeypatch):
        """Budget errors are reported as JSON with --json."""
        monkeypatch.setenv("WHTRIM_STATE_BUDGET", "5")
        result = runner.invoke(main, ["build", "--m", "2", "--k", "5", "--json"])

        assert result.exit_code == 3
        assert json.loads(result.output)["error_type"] == "budget"


class TestStatsCommand:
    """Tests for stats command."""

    def test_rows(self, runner, isolated_config, tmp_path):
        """Should print closed-form state counts per c."""
        out = tmp_path / "stats.csv"
        result = runner.invoke(
            main,
            ["stats", "--m", "2", "--k", "300", "--c-min", "258", "--c-max", "260", "-o", str(out)],
        )

        assert result.exit_code == 0
        rows = read_rows(out)
        assert rows[0] == ["c", "states"]
        assert rows[-1] == ["260", "635"]
        assert [int(r[1]) for r in rows[1:]] == [state_count(2, 300, c) for c in (258, 259, 260)]

    def test_default_range(self, runner, isolated_config, tmp_path):
        """Default range is 1..k-m."""
        out = tmp_path / "stats.csv"
        result = runner.invoke(main, ["stats", "--m", "2", "--k", "5", "-o", str(out)])

        assert result.exit_code == 0
        assert read_rows(out)[1:] == [["1", "10"], ["2", "8"], ["3", "7"]]

    def test_empty_range(self, runner, isolated_config):
        """Should exit with 2 on an empty range."""
        result = runner.invoke(
            main, ["stats", "--m", "2", "--k", "5", "--c-min", "3", "--c-max", "2"]
        )

        assert result.exit_code == 2


class TestGrowthCommand:
    """Tests for growth command."""

    def test_anymiss_2_36(self, runner, isolated_config, tmp_path):
        """AnyMiss(2,36) grows like 7.053 * 1.151^l."""
        out = tmp_path / "growth.csv"
        result = runner.invoke(main, ["growth", "anymiss:2:36", "-o", str(out)])

        assert result.exit_code == 0
        rows = read_rows(out)
        assert rows[0] == ["constraint", "states", "a", "lambda"]
        assert rows[1][0] == "anymiss:2:36"
        assert rows[1][1] == "630"
        assert float(rows[1][2]) == pytest.approx(7.053, abs=2e-3)
        assert float(rows[1][3]) == pytest.approx(1.151, abs=2e-3)

    def test_invalid_spec(self, runner, isolated_config):
        """Should exit with 2 on a malformed constraint."""
        result = runner.invoke(main, ["growth", "anymiss:2"])

        assert result.exit_code == 2


class TestCountCommand:
    """Tests for count command."""

    def test_rows(self, runner, isolated_config, tmp_path):
        """Should print exact counts for lengths 0..max-len."""
        out = tmp_path / "count.csv"
        result = runner.invoke(main, ["count", "anymiss:2:5", "--max-len", "3", "-o", str(out)])

        assert result.exit_code == 0
        assert out.read_text(encoding="utf-8") == "length,count\n0,1\n1,2\n2,4\n3,7\n"

    def test_negative_length(self, runner, isolated_config):
        """Should exit with 2 on a negative length."""
        result = runner.invoke(main, ["count", "anymiss:2:5", "--max-len", "-1"])

        assert result.exit_code == 2

    def test_broken_config_falls_back(self, runner, isolated_config):
        """An invalid config file only produces a warning."""
        (isolated_config / "config.toml").write_text("not = [toml", encoding="utf-8")
        result = runner.invoke(main, ["count", "anymiss:2:5", "--max-len", "1"])

        assert result.exit_code == 0
        assert "Warning: Failed to load config" in result.output


class TestCheckCommand:
    """Tests for check command."""

    def test_all_hold(self, runner, isolated_config):
        """A(2,5) ~ H(2,5), simulated by T(2,5,3), included in L(T)."""
        result = runner.invoke(main, ["check", "--m", "2", "--k", "5", "--c", "3"])

        assert result.exit_code == 0
        assert "isomorphism=true" in result.output
        assert "simulation=true" in result.output
        assert "inclusion=true" in result.output

    def test_isomorphism_only(self, runner, isolated_config):
        """Without --c only isomorphism is checked."""
        result = runner.invoke(main, ["check", "--m", "3", "--k", "7"])

        assert result.exit_code == 0
        assert "simulation" not in result.output

    def test_invalid(self, runner, isolated_config):
        """Should exit with 2 on invalid parameters."""
        result = runner.invoke(main, ["check", "--m", "6", "--k", "5"])

        assert result.exit_code == 2


class TestVerifyCommand:
    """Tests for verify command."""

    def test_certified(self, runner, isolated_config, pair_file, contracting_pair, tmp_path):
        """Should exit with 0 and write one result row."""
        out = tmp_path / "verify.csv"
        result = runner.invoke(
            main,
            [
                "verify",
                "--pair",
                pair_file(contracting_pair),
                "--constraint",
                "trim:2:12:6",
                "-o",
                str(out),
            ],
        )

        assert result.exit_code == 0
        rows = read_rows(out)
        assert tuple(rows[0]) == VERIFY_HEADER
        assert rows[1][0] == "contracting"
        assert rows[1][1] == "trim:2:12:6"
        assert rows[1][3] == "CertifiedStable"
        assert rows[1][2] == str(state_count(2, 12, 6))

    def test_explicit_representation(self, runner, isolated_config, pair_file, contracting_pair):
        """Explicit Kronecker storage reaches the same verdict."""
        result = runner.invoke(
            main,
            [
                "verify",
                "--pair",
                pair_file(contracting_pair),
                "--constraint",
                "trim:2:12:6",
                "--representation",
                "explicit",
            ],
        )

        assert result.exit_code == 0
        assert "explicit" in result.output

    def test_lower_bound(self, runner, isolated_config, pair_file, unstable_pair):
        """Should exit with 11 when the nominal dynamics are unstable."""
        result = runner.invoke(
            main, ["verify", "--pair", pair_file(unstable_pair), "--constraint", "anymiss:2:5"]
        )

        assert result.exit_code == 11
        assert "LowerBoundAtLeastOne" in result.output

    def test_inconclusive_json(self, runner, isolated_config, pair_file, rotation_pair):
        """Should exit with 10 when the iteration cap stops the search."""
        result = runner.invoke(
            main,
            [
                "verify",
                "--pair",
                pair_file(rotation_pair),
                "--constraint",
                "anymiss:2:5",
                "--max-iterations",
                "1",
                "--json",
            ],
        )

        assert result.exit_code == 10
        data = json.loads(result.output)["data"]
        assert data["verdict"] == "Inconclusive"
        assert data["iterations"] == 1
        assert data["lower"] == pytest.approx(0.5)

    def test_json_with_out_file(
        self, runner, isolated_config, pair_file, contracting_pair, tmp_path
    ):
        """--json prints the envelope and still writes the CSV row to --out."""
        out = tmp_path / "verify.csv"
        result = runner.invoke(
            main,
            [
                "verify",
                "--pair",
                pair_file(contracting_pair),
                "--constraint",
                "trim:2:12:6",
                "--json",
                "-o",
                str(out),
            ],
        )

        assert result.exit_code == 0
        data = json.loads(result.output)["data"]
        assert data["verdict"] == "CertifiedStable"
        rows = read_rows(out)
        assert tuple(rows[0]) == VERIFY_HEADER
        assert rows[1][0] == "contracting"
        assert rows[1][3] == "CertifiedStable"

    def test_history(self, runner, isolated_config, pair_file, rotation_pair, tmp_path):
        """Should write one iter,space,time row per iteration."""
        history = tmp_path / "history.csv"
        result = runner.invoke(
            main,
            [
                "verify",
                "--pair",
                pair_file(rotation_pair),
                "--constraint",
                "anymiss:2:5",
                "--history",
                str(history),
            ],
        )

        assert result.exit_code == 0
        rows = read_rows(history)
        assert rows[0] == ["iter", "space", "time"]
        assert [int(r[0]) for r in rows[1:]] == list(range(len(rows) - 1))

    def test_missing_pair(self, runner, isolated_config, tmp_path):
        """Should exit with 2 when the pair file is missing."""
        result = runner.invoke(
            main,
            ["verify", "--pair", str(tmp_path / "none.json"), "--constraint", "anymiss:2:5"],
        )

        assert result.exit_code == 2
        assert "not found" in result.output

    def test_malformed_pair_json(self, runner, isolated_config, tmp_path):
        """Format errors are reported with their type."""
        path = tmp_path / "bad.json"
        path.write_text('{"name": "x"}', encoding="utf-8")
        result = runner.invoke(
            main, ["verify", "--pair", str(path), "--constraint", "anymiss:2:5", "--json"]
        )

        assert result.exit_code == 2
        assert json.loads(result.output)["error_type"] == "format"

    def test_bad_constraint(self, runner, isolated_config, pair_file, contracting_pair):
        """Should exit with 2 on a malformed constraint."""
        result = runner.invoke(
            main, ["verify", "--pair", pair_file(contracting_pair), "--constraint", "trim:2:5"]
        )

        assert result.exit_code == 2

    def test_bad_delta(self, runner, isolated_config, pair_file, contracting_pair):
        """Should exit with 2 on a non-positive delta."""
        result = runner.invoke(
            main,
            [
                "verify",
                "--pair",
                pair_file(contracting_pair),
                "--constraint",
                "anymiss:2:5",
                "--delta",
                "0",
            ],
        )

        assert result.exit_code == 2

    def test_state_budget(
        self, runner, isolated_config, pair_file, contracting_pair, monkeypatch
    ):
        """Should exit with 3 when the automaton exceeds the budget."""
        monkeypatch.setenv("WHTRIM_STATE_BUDGET", "5")
        result = runner.invoke(
            main, ["verify", "--pair", pair_file(contracting_pair), "--constraint", "anymiss:2:5"]
        )

        assert result.exit_code == 3


class TestSweepCommand:
    """Tests for sweep command."""

    def test_rows_sorted(self, runner, isolated_config, pair_file, contracting_pair, tmp_path):
        """One row per c, in order, regardless of completion order."""
        out = tmp_path / "sweep.csv"
        result = runner.invoke(
            main,
            [
                "sweep",
                "--pair",
                pair_file(contracting_pair),
                "--m",
                "2",
                "--k",
                "6",
                "--jobs",
                "3",
                "-o",
                str(out),
            ],
        )

        assert result.exit_code == 0
        rows = read_rows(out)
        assert rows[0][0] == "c"
        assert [int(r[0]) for r in rows[1:]] == [1, 2, 3, 4]
        assert [int(r[1]) for r in rows[1:]] == [state_count(2, 6, c) for c in (1, 2, 3, 4)]
        assert {r[2] for r in rows[1:]} == {"CertifiedStable"}
        assert all(r[-1] == "" for r in rows[1:])

    def test_budget_failure_in_row(
        self, runner, isolated_config, pair_file, contracting_pair, monkeypatch, tmp_path
    ):
        """Budget failures go to the error column."""
        monkeypatch.setenv("WHTRIM_STATE_BUDGET", "8")
        out = tmp_path / "sweep.csv"
        result = runner.invoke(
            main,
            [
                "sweep",
                "--pair",
                pair_file(contracting_pair),
                "--m",
                "2",
                "--k",
                "5",
                "-o",
                str(out),
            ],
        )

        assert result.exit_code == 0
        rows = read_rows(out)
        assert rows[1][0] == "1"
        assert rows[1][-1] != ""
        assert rows[2][2] == "CertifiedStable"
        assert rows[3][2] == "CertifiedStable"


class TestGenCommand:
    """Tests for gen command."""

    def test_writes_loadable_pair(self, runner, isolated_config, tmp_path):
        """Generated file is a valid pair."""
        out = tmp_path / "plant.json"
        result = runner.invoke(
            main, ["gen", "--seed", "1", "--dim", "3", "--sr", "0.83", "-o", str(out)]
        )

        assert result.exit_code == 0
        pair = load_pair(str(out))
        assert pair.name == "gen-s1-d3-hold"
        assert max(abs(np.linalg.eigvals(pair.phi_hit))) == pytest.approx(0.83, rel=1e-8)

    def test_invalid_dim(self, runner, isolated_config):
        """Should exit with 2 on an unsupported dimension."""
        result = runner.invoke(main, ["gen", "--seed", "1", "--dim", "11"])

        assert result.exit_code == 2


class TestConfigCommand:
    """Tests for config command group."""

    def test_path(self, runner, isolated_config):
        """Should show the config location."""
        result = runner.invoke(main, ["config", "path"])

        assert result.exit_code == 0
        assert str(isolated_config) in result.output
        assert "File not found" in result.output

    def test_init_and_show(self, runner, isolated_config):
        """Should create the file, then show its sections."""
        result = runner.invoke(main, ["config", "init"])
        assert result.exit_code == 0
        assert (isolated_config / "config.toml").exists()

        result = runner.invoke(main, ["config", "show"])
        assert result.exit_code == 0
        assert "[jsr]" in result.output
        assert "representation" in result.output

    def test_init_cancel(self, runner, isolated_config):
        """Declining the overwrite prompt keeps the file."""
        runner.invoke(main, ["config", "init"])
        result = runner.invoke(main, ["config", "init"], input="n\n")

        assert result.exit_code == 0
        assert "Cancelled" in result.output

    def test_show_defaults(self, runner, isolated_config):
        """Without a file, defaults are shown."""
        result = runner.invoke(main, ["config", "show"])

        assert result.exit_code == 0
        assert "No configuration file found" in result.output
