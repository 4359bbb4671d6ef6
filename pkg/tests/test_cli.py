import json

import pytest
from click.testing import CliRunner

from bayespoker.cli import main
from bayespoker.matrices import load_matrices, save_matrices


@pytest.fixture()
def runner():
    return CliRunner()


@pytest.fixture()
def matrix_file(mset_small, tmp_path):
    path = tmp_path / "matrices.json"
    save_matrices(path, mset_small)
    return path


class TestEstimateMatrices:
    def test_writes_file_and_prints_table(self, runner, tmp_path):
        out = tmp_path / "m.json"
        result = runner.invoke(main, ["estimate-matrices", "--deals", "50000", "--seed", "3", "--out", str(out)])
        assert result.exit_code == 0, result.output
        assert out.exists()
        assert "Straight Flush" in result.output
        assert "reference" in result.output
        mset, _ = load_matrices(out)
        assert mset.num_deals == 50_000

    def test_same_seed_identical_files(self, runner, tmp_path):
        blobs = []
        for tag in ("a", "b"):
            out = tmp_path / f"{tag}.json"
            result = runner.invoke(main, ["estimate-matrices", "-n", "20000", "--seed", "9", "--out", str(out)])
            assert result.exit_code == 0
            blobs.append(out.read_bytes())
        assert blobs[0] == blobs[1]

    def test_zero_deals_rejected(self, runner, tmp_path):
        result = runner.invoke(main, ["estimate-matrices", "--deals", "0", "--out", str(tmp_path / "x.json")])
        assert result.exit_code != 0


class TestSimulate:
    def test_single_game_csv(self, runner, matrix_file, tmp_path):
        csv_path = tmp_path / "match.csv"
        result = runner.invoke(main, [
            "simulate", "--opponent", "rules", "--games", "1", "--seed", "5",
            "--matrices", str(matrix_file), "--out", str(csv_path),
        ])
        assert result.exit_code == 0, result.output
        rows = csv_path.read_text().strip().splitlines()
        assert len(rows) == 2  # header + one game
        summary = json.loads(result.output)
        assert summary["n"] == 1

    def test_summary_fields(self, runner, matrix_file):
        result = runner.invoke(main, [
            "simulate", "--opponent", "scripted_threshold", "--games", "50",
            "--seed", "5", "--matrices", str(matrix_file), "--learning", "off",
        ])
        assert result.exit_code == 0, result.output
        summary = json.loads(result.output)
        assert set(summary) >= {"n", "mean", "sd", "t", "p"}

    def test_missing_matrices_exits(self, runner, tmp_path, monkeypatch):
        monkeypatch.setenv("BAYESPOKER_DATA_DIR", str(tmp_path / "empty"))
        result = runner.invoke(main, ["simulate", "--opponent", "rules", "--games", "1"])
        assert result.exit_code == 2
        assert "estimate-matrices" in result.output


class TestOptimize:
    def test_writes_params_and_audit(self, runner, matrix_file, tmp_path):
        out = tmp_path / "curves.json"
        result = runner.invoke(main, [
            "optimize", "--iters", "2", "--games-per-eval", "30", "--seed", "1",
            "--out", str(out), "--opponent", "rules", "--matrices", str(matrix_file),
        ])
        assert result.exit_code == 0, result.output
        doc = json.loads(out.read_text())
        assert set(doc) == {"1", "2", "3", "4"}
        assert set(doc["1"]) == {"f_b", "f_f", "f_c"}
        assert (tmp_path / "curves.audit.json").exists()
