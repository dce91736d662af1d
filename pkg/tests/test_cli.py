"""Integration tests for the command-line interface."""

import json
import subprocess
import sys

import numpy as np
import pytest

from bccanon import symplectic_matrix
from bccanon.cli import run_command
from bccanon.matio import parse_matrix_file, payload_to_matrix, write_matrix_file


def run_cli(*argv, cwd=None):
    return subprocess.run(
        [sys.executable, "-m", "bccanon.cli", *argv],
        capture_output=True,
        text=True,
        cwd=cwd,
    )


@pytest.fixture
def generated_pair(tmp_path):
    report, code = run_command(["generate", "--order", "5", "--seed", "7", "--out", str(tmp_path)])
    assert code == 0
    return tmp_path / "A.json", tmp_path / "B.json"


class TestGenerate:
    def test_writes_self_adjoint_pair(self, generated_pair):
        path_a, path_b = generated_pair
        report, code = run_command(["check", str(path_a), str(path_b)])
        assert code == 0
        assert report.verdict == "self-adjoint"
        assert report.metrics["gram_residual"] < 1e-11

    def test_deterministic_files(self, tmp_path):
        d1, d2 = tmp_path / "one", tmp_path / "two"
        for d in (d1, d2):
            _, code = run_command(["generate", "--order", "7", "--seed", "3", "--out", str(d)])
            assert code == 0
        assert (d1 / "A.json").read_bytes() == (d2 / "A.json").read_bytes()
        assert (d1 / "B.json").read_bytes() == (d2 / "B.json").read_bytes()

    def test_unit_cosines_controls_rank(self, tmp_path):
        _, code = run_command(
            ["generate", "--order", "5", "--seed", "1", "--unit-cosines", "2", "--out", str(tmp_path)]
        )
        assert code == 0
        report, code = run_command(["classify", str(tmp_path / "A.json"), str(tmp_path / "B.json")])
        assert code == 0
        assert report.verdict == "mixed"
        assert report.metrics["rank_A"] == 3

    def test_bad_target_is_usage_error(self, tmp_path):
        _, code = run_command(
            ["generate", "--order", "5", "--seed", "1", "--unit-cosines", "9", "--out", str(tmp_path)]
        )
        assert code == 2


class TestCheck:
    def test_not_self_adjoint_exit_one(self, tmp_path):
        write_matrix_file(tmp_path / "A.json", np.eye(5))
        write_matrix_file(tmp_path / "B.json", np.zeros((5, 5)))
        report, code = run_command(["check", str(tmp_path / "A.json"), str(tmp_path / "B.json")])
        assert code == 1
        assert report.verdict == "not self-adjoint"
        assert report.metrics["rank(A:B)"] == 5

    def test_missing_file_exit_two(self, tmp_path):
        _, code = run_command(["check", str(tmp_path / "missing.json"), str(tmp_path / "missing.json")])
        assert code == 2

    def test_malformed_file_exit_two(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text('{"rows": 2, "cols": 2, "data": [[[1, 0]]]}')
        write_matrix_file(tmp_path / "B.json", np.eye(2))
        _, code = run_command(["check", str(bad), str(tmp_path / "B.json")])
        assert code == 2


class TestClassify:
    def test_identity_coupling_fixture(self, fixtures_dir):
        report, code = run_command(
            ["classify", str(fixtures_dir / "w_identity_A.json"), str(fixtures_dir / "w_identity_B.json")]
        )
        assert code == 0
        assert report.verdict == "mixed"
        assert report.metrics["r"] == 0
        assert report.metrics["rank_A"] == 3
        assert report.metrics["rank_B"] == 3

    def test_even_order_dirichlet(self, fixtures_dir):
        report, code = run_command(
            ["classify", str(fixtures_dir / "dirichlet_A.json"), str(fixtures_dir / "dirichlet_B.json")]
        )
        assert code == 0
        assert report.verdict == "separated"
        assert report.metrics["rank_S"] == 0

    def test_non_self_adjoint_exit_three(self, tmp_path):
        write_matrix_file(tmp_path / "A.json", np.eye(5))
        write_matrix_file(tmp_path / "B.json", np.zeros((5, 5)))
        _, code = run_command(["classify", str(tmp_path / "A.json"), str(tmp_path / "B.json")])
        assert code == 3


class TestCanon:
    def test_factor_files_written(self, generated_pair, tmp_path):
        path_a, path_b = generated_pair
        out = tmp_path / "factors"
        report, code = run_command(["canon", str(path_a), str(path_b), "--out", str(out)])
        assert code == 0
        for name in ("Q1", "Q2", "Q3", "Q4", "core", "K", "W", "C_diag", "S_diag"):
            assert (out / f"{name}.json").exists()
        manifest = json.loads((out / "manifest.json").read_text())
        assert manifest["files"]["Q1"] == "Q1.json"
        assert report.metrics["reconstruction_residual"] < 1e-9
        assert report.metrics["row_space_angle_max"] < 1e-8

    def test_report_embeds_factors_that_parse_back(self, generated_pair, tmp_path):
        path_a, path_b = generated_pair
        out = tmp_path / "factors"
        report, code = run_command(["canon", str(path_a), str(path_b), "--out", str(out)])
        assert code == 0
        for name, payload in report.factors.items():
            embedded = payload_to_matrix(payload)
            on_disk = parse_matrix_file(out / f"{name}.json")
            assert embedded.tobytes() == on_disk.tobytes()

    def test_non_self_adjoint_exit_three(self, tmp_path):
        write_matrix_file(tmp_path / "A.json", np.eye(5))
        write_matrix_file(tmp_path / "B.json", np.zeros((5, 5)))
        _, code = run_command(
            ["canon", str(tmp_path / "A.json"), str(tmp_path / "B.json"), "--out", str(tmp_path / "f")]
        )
        assert code == 3

    def test_even_order_factors(self, fixtures_dir, tmp_path):
        out = tmp_path / "factors"
        report, code = run_command(
            [
                "canon",
                str(fixtures_dir / "dirichlet_A.json"),
                str(fixtures_dir / "dirichlet_B.json"),
                "--out",
                str(out),
            ]
        )
        assert code == 0
        assert report.verdict == "separated"
        for name in ("U", "middle", "Z", "W", "C_diag", "S_diag"):
            assert (out / f"{name}.json").exists()


class TestSubprocessInterface:
    def test_pipeline_exit_codes(self, tmp_path):
        gen = run_cli("generate", "--order", "5", "--seed", "11", "--out", str(tmp_path))
        assert gen.returncode == 0
        a, b = str(tmp_path / "A.json"), str(tmp_path / "B.json")
        assert run_cli("check", a, b).returncode == 0
        canon = run_cli("canon", a, b, "--out", str(tmp_path / "f"), "--format", "json")
        assert canon.returncode == 0
        payload = json.loads(canon.stdout)
        assert payload["command"] == "canon"
        assert run_cli("classify", a, b).returncode == 0

    def test_json_output_deterministic(self, tmp_path):
        run_cli("generate", "--order", "3", "--seed", "2", "--out", str(tmp_path))
        a, b = str(tmp_path / "A.json"), str(tmp_path / "B.json")
        first = run_cli("check", a, b, "--format", "json")
        second = run_cli("check", a, b, "--format", "json")
        assert first.stdout == second.stdout

    def test_usage_error_exit_two(self):
        assert run_cli("bogus-command").returncode == 2

    def test_text_report_lines(self, fixtures_dir):
        result = run_cli(
            "check",
            str(fixtures_dir / "w_identity_A.json"),
            str(fixtures_dir / "w_identity_B.json"),
        )
        assert result.returncode == 0
        assert "rank(A:B) = 5" in result.stdout
        assert "gram_residual = " in result.stdout


class TestEnvironmentTolerance:
    def test_env_var_applies_and_flag_wins(self, tmp_path, monkeypatch):
        write_matrix_file(tmp_path / "A.json", np.eye(5))
        b = np.eye(5) + 1e-6 * np.ones((5, 5))
        write_matrix_file(tmp_path / "B.json", b)
        a_path, b_path = str(tmp_path / "A.json"), str(tmp_path / "B.json")

        _, strict = run_command(["check", a_path, b_path])
        assert strict == 1

        monkeypatch.setenv("BC_CANON_TOL", "0.5")
        _, relaxed = run_command(["check", a_path, b_path])
        assert relaxed == 0

        _, flag_wins = run_command(["check", a_path, b_path, "--tol", "1e-12"])
        assert flag_wins == 1


class TestFixtureConsistency:
    def test_c5_fixture_matches_library(self, fixtures_dir):
        m = parse_matrix_file(fixtures_dir / "c5.json")
        assert np.array_equal(m, symplectic_matrix(5))
