import json
import subprocess
import sys

import pytest

from splitlab.cli import run


def run_cli(args, **kwargs):
    return subprocess.run(
        [sys.executable, "-m", "splitlab.cli", *args],
        capture_output=True,
        timeout=300,
        **kwargs,
    )


def capture(capsys, args):
    code = run(args)
    out = capsys.readouterr()
    return code, out.out, out.err


class TestExitCodes:
    def test_success(self, capsys):
        code, out, _ = capture(capsys, ["northcott-bounds", "--primes", "2"])
        assert code == 0
        doc = json.loads(out)
        assert doc["lower"] == pytest.approx(0.11552453009332421)
        assert doc["upper"] == pytest.approx(0.6931471805599453)

    def test_invalid_argument_is_one(self, capsys):
        code, _, err = capture(capsys, ["thm12-tower", "--stages", "0"])
        assert code == 1
        diag = json.loads(err.strip().splitlines()[-1])
        assert diag["error"]["kind"] == "invalid-argument"

    def test_unknown_flag_is_one(self, capsys):
        code, _, err = capture(capsys, ["northcott-bounds", "--primes", "2", "--frobnicate"])
        assert code == 1
        assert "error" in err

    def test_unknown_subcommand_is_one(self, capsys):
        code, _, _ = capture(capsys, ["not-a-command"])
        assert code == 1

    def test_resource_error_is_two(self, capsys):
        code, _, err = capture(
            capsys,
            ["sfrak-sum", "--basis", "2", "--prime-ceiling", "100000",
             "--budget-sieve", "1000"],
        )
        assert code == 2
        diag = json.loads(err.strip().splitlines()[-1])
        assert diag["error"]["kind"] == "resource"

    def test_prop71_third_stage_resource_error(self, capsys):
        code, _, err = capture(capsys, ["prop71-tower", "--stages", "3"])
        assert code == 2
        assert "stage 3" in err

    def test_verification_failure_is_three(self, capsys, tmp_path):
        code, out, _ = capture(capsys, ["prop71-tower", "--stages", "1"])
        assert code == 0
        doc = json.loads(out)
        doc["stages"][0]["block_sum"] += 1.0
        path = tmp_path / "tampered.json"
        path.write_text(json.dumps(doc))
        code, out, err = capture(capsys, ["verify", str(path)])
        assert code == 3
        report = json.loads(out)
        assert report["verified"] is False and report["issues"]
        diag = json.loads(err.strip().splitlines()[-1])
        assert diag["error"]["kind"] == "verification"

    def test_missing_file_is_one(self, capsys):
        code, _, _ = capture(capsys, ["verify", "/nonexistent/trace.json"])
        assert code == 1


class TestOutputsAndFormats:
    def test_construct_quadratic_doc(self, capsys):
        code, out, _ = capture(capsys, ["construct-quadratic", "--split", "5", "--inert", "3"])
        assert code == 0
        doc = json.loads(out)
        assert doc["m"] == 11 and doc["verified"] is True
        assert doc["construction"] == "construct-quadratic"

    def test_out_flag_writes_file(self, capsys, tmp_path):
        path = tmp_path / "bounds.json"
        code, out, _ = capture(
            capsys, ["northcott-bounds", "--primes", "2,3", "--out", str(path)]
        )
        assert code == 0 and out == ""
        assert json.loads(path.read_text())["primes"] == [2, 3]

    def test_density_csv(self, capsys):
        code, out, _ = capture(
            capsys,
            ["density-check", "--basis", "-1", "--prime-ceiling", "2000",
             "--format", "csv"],
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "x,count,expected,ratio"
        assert len(lines) > 3

    def test_csv_rejected_elsewhere(self, capsys):
        code, _, err = capture(
            capsys, ["northcott-bounds", "--primes", "2", "--format", "csv"]
        )
        assert code == 1
        assert "csv" in err

    def test_human_format(self, capsys):
        code, out, _ = capture(
            capsys, ["northcott-bounds", "--primes", "2", "--format", "human"]
        )
        assert code == 0
        assert "lower" in out and "{" not in out

    def test_env_override_format(self, capsys, monkeypatch):
        monkeypatch.setenv("SPLITLAB_FORMAT", "human")
        code, out, _ = capture(capsys, ["northcott-bounds", "--primes", "2"])
        assert code == 0
        assert "{" not in out

    def test_flag_beats_env(self, capsys, monkeypatch):
        monkeypatch.setenv("SPLITLAB_FORMAT", "human")
        code, out, _ = capture(
            capsys, ["northcott-bounds", "--primes", "2", "--format", "json"]
        )
        assert code == 0
        json.loads(out)

    def test_env_budget_override(self, capsys, monkeypatch):
        monkeypatch.setenv("SPLITLAB_BUDGET_SIEVE", "1000")
        code, _, _ = capture(capsys, ["sfrak-sum", "--basis", "2", "--prime-ceiling", "5000"])
        assert code == 2

    def test_bad_env_budget_is_invalid_argument(self, capsys, monkeypatch):
        monkeypatch.setenv("SPLITLAB_BUDGET_SIEVE", "soon")
        code, _, err = capture(capsys, ["sfrak-sum", "--basis", "2", "--prime-ceiling", "5000"])
        assert code == 1
        assert "SPLITLAB_BUDGET_SIEVE" in err


class TestPipelines:
    def test_tower_verify_roundtrip(self, capsys, tmp_path):
        path = tmp_path / "tower.json"
        code, _, _ = capture(capsys, ["prop71-tower", "--stages", "2", "--out", str(path)])
        assert code == 0
        code, out, _ = capture(capsys, ["verify", str(path)])
        assert code == 0
        assert json.loads(out)["verified"] is True

    def test_adjoin_i_bound_pipeline(self, capsys, tmp_path):
        path = tmp_path / "thm12.json"
        code, _, _ = capture(capsys, ["thm12-tower", "--stages", "1", "--out", str(path)])
        assert code == 0
        code, out, _ = capture(
            capsys,
            ["adjoin-i-bound", "--in", str(path), "--prime-ceiling", "100000"],
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["total_upper_bound"] < 0.6

    def test_quadratic_verify_roundtrip(self, capsys, tmp_path):
        path = tmp_path / "quad.json"
        code, _, _ = capture(
            capsys,
            ["construct-quadratic", "--ramified", "11", "--two", "inert",
             "--out", str(path)],
        )
        assert code == 0
        code, out, _ = capture(capsys, ["verify", str(path)])
        assert code == 0
        assert json.loads(out)["verified"] is True

    def test_console_entry_point(self):
        proc = run_cli(["northcott-bounds", "--primes", "2"])
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["lower"] > 0


class TestDeterminism:
    @pytest.mark.parametrize(
        "args",
        [
            ["construct-quadratic", "--split", "5,13", "--inert", "3", "--two", "split"],
            ["sfrak-sum", "--basis=-1,2", "--prime-ceiling", "10000", "--terms"],
            ["northcott-bounds", "--primes", "2,3,5,7"],
            ["northcott-select", "--r", "1", "--epsilon", "0.5"],
            ["density-check", "--basis", "-1", "--prime-ceiling", "2000"],
            ["density-check", "--basis", "2,5", "--prime-ceiling", "2000", "--format", "csv"],
            ["inert-companion", "--p", "7", "--mod-power", "3", "--want", "inert"],
            ["prop71-tower", "--stages", "2"],
        ],
    )
    def test_byte_identical_runs(self, capsys, args):
        first = capture(capsys, args)
        second = capture(capsys, args)
        assert first == second
        assert first[0] == 0
