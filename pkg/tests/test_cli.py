"""Tests for the CLI interface."""

from __future__ import annotations

import json
from pathlib import Path

import yaml
from typer.testing import CliRunner

from sepmax import __version__
from sepmax.cli import app

runner = CliRunner()


def _normalized(output: str) -> str:
    """Collapse whitespace for assertion matching (rich wraps long lines)."""
    return " ".join(output.split())


class TestVersion:
    def test_version_flag(self) -> None:
        result = runner.invoke(app, ["--version"])
        assert result.exit_code == 0
        assert __version__ in result.output


class TestSolve:
    def test_alg1_json(self, inst_a_file: Path) -> None:
        result = runner.invoke(
            app, ["solve", "-i", str(inst_a_file), "-s", "alg1", "--k", "2", "--json"]
        )
        assert result.exit_code == 0
        data = json.loads(result.stdout)
        assert data["result"]["value"] == 4.0
        assert data["result"]["chosen"] == [0, 2]
        assert data["chosen_labels"] == ["S1", "S3"]

    def test_panel_output(self, inst_a_file: Path) -> None:
        result = runner.invoke(app, ["solve", "-i", str(inst_a_file), "-s", "alg1", "--k", "2"])
        assert result.exit_code == 0
        output = _normalized(result.output)
        assert "inst-a" in output
        assert "Value: 4" in output
        assert "S1" in output

    def test_brute_k_zero(self, inst_a_file: Path) -> None:
        result = runner.invoke(
            app, ["solve", "-i", str(inst_a_file), "-s", "brute", "--k", "0", "--json"]
        )
        assert result.exit_code == 0
        data = json.loads(result.stdout)
        assert data["result"]["chosen"] == []
        assert data["result"]["value"] == 0.0

    def test_randomized_reports_are_byte_identical(
        self, inst_a_file: Path, tmp_path: Path
    ) -> None:
        paths = [tmp_path / "first.json", tmp_path / "second.json"]
        for path in paths:
            result = runner.invoke(
                app,
                [
                    "solve",
                    "-i",
                    str(inst_a_file),
                    "-s",
                    "alg3-min",
                    "--k",
                    "2",
                    "--seed",
                    "7",
                    "-o",
                    str(path),
                ],
            )
            assert result.exit_code == 0
        assert paths[0].read_bytes() == paths[1].read_bytes()
        assert "Report written" in _normalized(result.output)

    def test_workers_do_not_change_report(self, inst_a_file: Path) -> None:
        base = ["solve", "-i", str(inst_a_file), "-s", "alg3-min", "--k", "2", "--json"]
        serial = runner.invoke(app, base)
        threaded = runner.invoke(app, [*base, "--workers", "4"])
        assert serial.exit_code == threaded.exit_code == 0
        assert serial.stdout == threaded.stdout

    def test_owa_k_above_vector_length(self, inst_b_file: Path) -> None:
        result = runner.invoke(
            app, ["solve", "-i", str(inst_b_file), "-s", "brute", "--k", "3", "--json"]
        )
        assert result.exit_code == 4
        assert json.loads(result.stdout)["error"] == "InvalidParamsError"

    def test_unknown_solver(self, inst_a_file: Path) -> None:
        result = runner.invoke(app, ["solve", "-i", str(inst_a_file), "-s", "simplex"])
        assert result.exit_code == 4
        assert "unknown solver" in _normalized(result.output)

    def test_unknown_solver_json(self, inst_a_file: Path) -> None:
        result = runner.invoke(app, ["solve", "-i", str(inst_a_file), "-s", "simplex", "--json"])
        assert result.exit_code == 4
        data = json.loads(result.stdout)
        assert data["error"] == "InvalidParamsError"
        assert data["exit_code"] == 4

    def test_missing_instance(self, tmp_path: Path) -> None:
        result = runner.invoke(app, ["solve", "-i", str(tmp_path / "nope.yaml"), "-s", "brute"])
        assert result.exit_code == 2
        assert "InstanceFormatError" in _normalized(result.output)

    def test_enumeration_budget(self, inst_a_file: Path) -> None:
        result = runner.invoke(
            app,
            ["solve", "-i", str(inst_a_file), "-s", "brute", "--k", "2", "--budget-evals", "1"],
        )
        assert result.exit_code == 3

    def test_run_budget(self, inst_a_file: Path) -> None:
        result = runner.invoke(
            app,
            ["solve", "-i", str(inst_a_file), "-s", "alg3-min", "--k", "2", "--budget-runs", "1"],
        )
        assert result.exit_code == 3

    def test_best_subset_reports_found(self, inst_a_file: Path) -> None:
        result = runner.invoke(
            app,
            ["solve", "-i", str(inst_a_file), "-s", "best-subset", "--epsilon", "1e-6"],
        )
        assert result.exit_code == 0
        assert "Reached v(X): yes" in _normalized(result.output)


class TestVerify:
    def test_declared_values_hold(self, inst_a_file: Path) -> None:
        result = runner.invoke(app, ["verify", "-i", str(inst_a_file), "--json"])
        assert result.exit_code == 0
        data = json.loads(result.stdout)
        assert data["instance_id"] == "inst-a"
        assert len(data["separability"]) == 3
        assert all(r["holds"] for r in data["separability"])

    def test_superseparable_p_two(self, inst_a_file: Path) -> None:
        result = runner.invoke(
            app,
            ["verify", "-i", str(inst_a_file), "--kind", "superseparable", "--p", "2", "--json"],
        )
        assert result.exit_code == 0
        report = json.loads(result.stdout)["separability"][0]
        assert report["holds"] is True
        assert report["witness"] is None

    def test_superseparable_p_zero_fails(self, inst_a_file: Path) -> None:
        result = runner.invoke(
            app,
            ["verify", "-i", str(inst_a_file), "--kind", "superseparable", "--p", "0", "--json"],
        )
        assert result.exit_code == 0
        report = json.loads(result.stdout)["separability"][0]
        assert report["holds"] is False
        assert report["witness"] == [0]
        assert report["violation"] == 3.0

    def test_strict_exit(self, inst_a_file: Path) -> None:
        result = runner.invoke(
            app,
            ["verify", "-i", str(inst_a_file), "--kind", "superseparable", "--p", "0", "--strict"],
        )
        assert result.exit_code == 1
        assert "Separability" in result.output

    def test_owa_at_most(self, inst_b_file: Path) -> None:
        result = runner.invoke(
            app,
            [
                "verify",
                "-i",
                str(inst_b_file),
                "--kind",
                "at-most-subseparable",
                "--p",
                "2",
                "--json",
            ],
        )
        assert result.exit_code == 0
        assert json.loads(result.stdout)["separability"][0]["holds"] is True

    def test_structure_table(self, inst_a_file: Path) -> None:
        result = runner.invoke(app, ["verify", "-i", str(inst_a_file), "--structure"])
        assert result.exit_code == 0
        output = _normalized(result.output)
        assert "Structure" in output
        assert "submodular" in output

    def test_limit_exceeded(self, inst_a_file: Path) -> None:
        result = runner.invoke(
            app, ["verify", "-i", str(inst_a_file), "--exhaustive-limit", "2"]
        )
        assert result.exit_code == 3
        assert "exhaustive limit" in _normalized(result.output)

    def test_sampled_above_limit(self, inst_a_file: Path) -> None:
        result = runner.invoke(
            app,
            [
                "verify",
                "-i",
                str(inst_a_file),
                "--exhaustive-limit",
                "2",
                "--sampled-verify",
                "20",
            ],
        )
        assert result.exit_code == 0
        assert "(sampled)" in result.output


class TestGen:
    def test_cover_to_stdout(self) -> None:
        result = runner.invoke(
            app,
            ["gen", "cover", "--n-elements", "6", "--n-sets", "4", "--max-freq", "2"],
        )
        assert result.exit_code == 0
        data = yaml.safe_load(result.stdout)
        assert data["kind"] == "cover"
        assert data["declared_p"]["superseparable"] == 2.0

    def test_owa_to_file(self, tmp_path: Path) -> None:
        out = tmp_path / "owa.yaml"
        result = runner.invoke(
            app,
            [
                "gen",
                "owa",
                "--agents",
                "5",
                "--items",
                "4",
                "--approvals",
                "2",
                "--preset",
                "pav",
                "-o",
                str(out),
            ],
        )
        assert result.exit_code == 0
        assert out.exists()
        assert "Wrote owa-pav" in _normalized(result.output)

    def test_generated_file_solves(self, tmp_path: Path) -> None:
        out = tmp_path / "bm.yaml"
        gen = runner.invoke(
            app, ["gen", "bmatching", "--nx", "4", "--ny", "5", "--y-degree", "2", "-o", str(out)]
        )
        assert gen.exit_code == 0
        result = runner.invoke(app, ["solve", "-i", str(out), "-s", "alg1", "--k", "2"])
        assert result.exit_code == 0

    def test_missing_flag(self) -> None:
        result = runner.invoke(app, ["gen", "cover", "--n-elements", "6"])
        assert result.exit_code == 4
        assert "--n-sets" in _normalized(result.output)

    def test_infeasible(self) -> None:
        result = runner.invoke(
            app,
            ["gen", "cover", "--n-elements", "6", "--n-sets", "2", "--max-freq", "3"],
        )
        assert result.exit_code == 4

    def test_negative_seed(self) -> None:
        result = runner.invoke(
            app,
            [
                "gen",
                "cover",
                "--n-elements",
                "6",
                "--n-sets",
                "3",
                "--max-freq",
                "2",
                "--seed",
                "-1",
            ],
        )
        assert result.exit_code == 4
        assert "seed" in _normalized(result.output)
