import json
import math
import subprocess
import sys

import pytest

from ctxprob.cli import main
from ctxprob.data import parse_report


def run_cli(capsysbinary, *argv):
    code = main(list(argv))
    captured = capsysbinary.readouterr()
    return code, captured.out, captured.err


class TestAnalyzeDirect:
    def test_hyperbolic_example(self, capsysbinary):
        code, out, err = run_cli(
            capsysbinary, "analyze", "--p-s", "0.9", "--p1p", "0.1", "--p2p", "0.1"
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["lambda"] == pytest.approx(3.5, abs=1e-12)
        assert doc["regime"]["kind"] == "hyperbolic"
        assert doc["regime"]["sign"] == 1
        assert doc["regime"]["theta"] == pytest.approx(1.9248473002384139, abs=1e-12)
        assert doc["lambda_interval"] is None
        assert doc["wave"]["kind"] == "split-complex"

    def test_additive_example(self, capsysbinary):
        code, out, _ = run_cli(
            capsysbinary, "analyze", "--p-s", "0.5", "--p1p", "0.3", "--p2p", "0.2"
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["lambda"] == 0.0
        assert doc["regime"]["kind"] == "trigonometric"
        assert doc["regime"]["theta"] == pytest.approx(math.pi / 2, abs=1e-15)

    def test_flag_formatting_is_irrelevant(self, capsysbinary):
        _, out1, _ = run_cli(
            capsysbinary, "analyze", "--p-s", "0.5", "--p1p", "0.3", "--p2p", "0.2"
        )
        _, out2, _ = run_cli(
            capsysbinary, "analyze", "--p-s", "0.50", "--p1p", "0.30", "--p2p", "0.20"
        )
        assert out1 == out2
        assert json.loads(out1)["delta"] == 0.0

    def test_degenerate_reference_reports_null(self, capsysbinary):
        code, out, _ = run_cli(
            capsysbinary, "analyze", "--p-s", "0.5", "--p1p", "0", "--p2p", "0.2"
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["lambda"] is None
        assert doc["regime"]["kind"] == "degenerate"
        assert doc["wave"] is None

    def test_out_of_range_probability_exits_3(self, capsysbinary):
        code, _, err = run_cli(
            capsysbinary, "analyze", "--p-s", "1.5", "--p1p", "0.1", "--p2p", "0.1"
        )
        assert code == 3
        assert err.startswith(b"error: inadmissible:")

    def test_subcontext_additivity_violation_exits_3(self, capsysbinary):
        code, _, err = run_cli(
            capsysbinary,
            "analyze", "--p-s", "0.9", "--p1p", "0.1", "--p2p", "0.1",
            "--p1", "0.1", "--p2", "0.1",
        )
        assert code == 3
        assert b"inadmissible" in err

    def test_usage_errors_exit_1(self, capsysbinary):
        assert run_cli(capsysbinary, "analyze")[0] == 1  # no input at all
        assert run_cli(capsysbinary, "analyze", "--p-s", "0.5")[0] == 1  # incomplete
        assert (
            run_cli(
                capsysbinary,
                "analyze", "--p-s", "0.5", "--p1p", "0.3", "--p2p", "0.2", "--p1", "0.3",
            )[0]
            == 1
        )  # --p1 without --p2
        assert run_cli(capsysbinary, "analyze", "--p-s", "abc", "--p1p", "0.3", "--p2p", "0.2")[0] == 1
        code, _, err = run_cli(capsysbinary, "nonsense")
        assert code == 1
        assert err.startswith(b"error: usage:")


class TestAnalyzeFile:
    def test_counts_file_with_output(self, capsysbinary, tmp_path):
        counts = tmp_path / "counts.csv"
        counts.write_text("context,successes,trials\nS,900,1000\nS1p,100,1000\nS2p,100,1000\n")
        out_path = tmp_path / "report.json"
        code, _, _ = run_cli(
            capsysbinary, "analyze", str(counts), "--seed", "3", "--output", str(out_path)
        )
        assert code == 0
        doc = parse_report(out_path.read_bytes())
        assert doc.lam == pytest.approx(3.5, abs=1e-12)
        assert doc.lambda_interval is not None
        assert doc.inputs["S"].successes == 900
        assert doc.reproducibility.replicates == 1000
        assert doc.additivity is None

    def test_additivity_block_present_with_subcontexts(self, capsysbinary, tmp_path):
        counts = tmp_path / "counts.csv"
        counts.write_text(
            "context,successes,trials\nS,900,1000\nS1,400,1000\nS2,500,1000\n"
            "S1p,100,1000\nS2p,100,1000\n"
        )
        code, out, _ = run_cli(capsysbinary, "analyze", str(counts), "--replicates", "50")
        assert code == 0
        doc = json.loads(out)
        assert doc["additivity_check"]["present"] is True
        assert doc["additivity_check"]["z_statistic"] == 0.0
        assert doc["additivity_check"]["consistent"] is True

    def test_deterministically_violated_decomposition_exits_3(self, capsysbinary, tmp_path):
        counts = tmp_path / "counts.csv"
        counts.write_text(
            "context,successes,trials\nS,10,10\nS1,10,10\nS2,10,10\nS1p,1,10\nS2p,1,10\n"
        )
        code, _, err = run_cli(capsysbinary, "analyze", str(counts), "--replicates", "10")
        assert code == 3
        assert err.startswith(b"error: inadmissible:")

    def test_missing_file_exits_2(self, capsysbinary, tmp_path):
        code, _, err = run_cli(capsysbinary, "analyze", str(tmp_path / "nope.csv"))
        assert code == 2
        assert err.startswith(b"error: io:")

    def test_malformed_file_exits_2(self, capsysbinary, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("context,successes,trials\nS,11,10\n")
        code, _, err = run_cli(capsysbinary, "analyze", str(bad))
        assert code == 2
        assert err.startswith(b"error: parse:")
        assert b"line 2" in err

    def test_file_and_flags_conflict_exits_1(self, capsysbinary, tmp_path):
        counts = tmp_path / "counts.csv"
        counts.write_text("context,successes,trials\nS,9,10\nS1p,1,10\nS2p,1,10\n")
        code, _, _ = run_cli(capsysbinary, "analyze", str(counts), "--p-s", "0.5")
        assert code == 1


class TestSimulate:
    def test_two_slit_truth_line(self, capsysbinary, tmp_path):
        out_path = tmp_path / "counts.csv"
        code, _, err = run_cli(
            capsysbinary,
            "simulate", "two-slit", "--p1", "0.3", "--p2", "0.2",
            "--theta", "1.0471975511965976", "--trials", "20000", "--seed", "42",
            "--output", str(out_path),
        )
        assert code == 0
        truth = dict(
            field.split("=") for field in err.decode().strip().split()[1:]
        )
        assert float(truth["lambda"]) == pytest.approx(0.5, abs=1e-12)
        assert truth["regime"] == "trigonometric"
        text = out_path.read_text()
        assert text.startswith("context,successes,trials\n")
        assert len(text.strip().split("\n")) == 4  # header + S, S1p, S2p

    def test_destructive_interference_yields_zero_successes(self, capsysbinary, tmp_path):
        out_path = tmp_path / "counts.csv"
        code, _, _ = run_cli(
            capsysbinary,
            "simulate", "two-slit", "--p1", "0.5", "--p2", "0.5",
            "--theta", "3.1415927", "--trials", "1000", "--output", str(out_path),
        )
        assert code == 0
        s_row = out_path.read_text().strip().split("\n")[1]
        assert s_row == "S,0,1000"

    def test_urn_truth_line(self, capsysbinary, tmp_path):
        out_path = tmp_path / "counts.csv"
        code, _, err = run_cli(
            capsysbinary,
            "simulate", "hyperbolic-urn", "--p1", "0.4", "--p2", "0.5",
            "--p1p", "0.1", "--p2p", "0.1", "--trials", "1000", "--seed", "7",
            "--output", str(out_path),
        )
        assert code == 0
        truth = dict(field.split("=") for field in err.decode().strip().split()[1:])
        assert float(truth["lambda"]) == pytest.approx(3.5, abs=1e-12)
        assert truth["sign"] == "+1"
        assert len(out_path.read_text().strip().split("\n")) == 6  # header + 5 contexts

    def test_invalid_scenario_exits_3(self, capsysbinary):
        code, _, err = run_cli(
            capsysbinary,
            "simulate", "two-slit", "--p1", "0.5", "--p2", "0.5", "--theta", "0",
        )
        assert code == 3
        assert err.startswith(b"error: inadmissible:")
        code, _, _ = run_cli(
            capsysbinary,
            "simulate", "hyperbolic-urn", "--p1", "0.3", "--p2", "0.2",
            "--p1p", "0.3", "--p2p", "0.2",
        )
        assert code == 3

    def test_counts_to_stdout(self, capsysbinary):
        code, out, _ = run_cli(
            capsysbinary,
            "simulate", "direct", "--p-s", "0.5", "--p1p", "0.25", "--p2p", "0.25",
            "--trials", "10",
        )
        assert code == 0
        assert out.startswith(b"context,successes,trials\n")


class TestPipeline:
    def test_regime_recovery_and_determinism(self, capsysbinary, tmp_path):
        counts = tmp_path / "counts.csv"
        reports = []
        for _ in range(2):
            code, _, err = run_cli(
                capsysbinary,
                "simulate", "two-slit", "--p1", "0.3", "--p2", "0.2",
                "--theta", "1.0471975511965976", "--trials", "100000", "--seed", "42",
                "--output", str(counts),
            )
            assert code == 0
            code, out, _ = run_cli(capsysbinary, "analyze", str(counts), "--seed", "11")
            assert code == 0
            reports.append(out)
        assert reports[0] == reports[1]
        doc = json.loads(reports[0])
        assert doc["regime"]["kind"] == "trigonometric"
        lo, hi = doc["lambda_interval"]
        assert lo <= 0.5 <= hi


class TestSweep:
    def test_symmetric_quarter_grid(self, capsysbinary):
        code, out, _ = run_cli(
            capsysbinary,
            "sweep", "--p1p", "0.25", "--p2p", "0.25",
            "--lambda-min", "-1", "--lambda-max", "1", "--steps", "3",
        )
        assert code == 0
        lines = out.decode().strip().split("\n")
        assert lines[0] == "lambda,theta,regime,p_s"
        p_values = [float(line.split(",")[3]) for line in lines[1:]]
        assert p_values == [0.0, 0.5, 1.0]
        assert [line.split(",")[2] for line in lines[1:]] == ["trigonometric"] * 3

    def test_hyperbolic_grid(self, capsysbinary):
        code, out, _ = run_cli(
            capsysbinary,
            "sweep", "--p1p", "0.1", "--p2p", "0.1",
            "--lambda-min", "0", "--lambda-max", "4", "--steps", "2",
        )
        assert code == 0
        lines = out.decode().strip().split("\n")[1:]
        assert [float(line.split(",")[3]) for line in lines] == pytest.approx([0.2, 1.0], abs=1e-12)
        assert lines[1].split(",")[2] == "hyperbolic"

    def test_monotone_p_s(self, capsysbinary):
        code, out, _ = run_cli(
            capsysbinary,
            "sweep", "--p1p", "0.3", "--p2p", "0.2",
            "--lambda-min", "-1", "--lambda-max", "1", "--steps", "41",
        )
        assert code == 0
        p_values = [float(line.split(",")[3]) for line in out.decode().strip().split("\n")[1:]]
        assert all(x <= y for x, y in zip(p_values, p_values[1:]))

    def test_degenerate_grid_exits_1(self, capsysbinary):
        code, _, err = run_cli(
            capsysbinary,
            "sweep", "--p1p", "0.25", "--p2p", "0.25",
            "--lambda-min", "0.5", "--lambda-max", "0.5", "--steps", "2",
        )
        assert code == 1
        assert err.startswith(b"error: usage:")

    def test_too_few_steps_exits_1(self, capsysbinary):
        code, _, _ = run_cli(
            capsysbinary,
            "sweep", "--p1p", "0.25", "--p2p", "0.25",
            "--lambda-min", "0", "--lambda-max", "1", "--steps", "1",
        )
        assert code == 1

    def test_out_of_range_interval_exits_3(self, capsysbinary):
        code, _, err = run_cli(
            capsysbinary,
            "sweep", "--p1p", "0.25", "--p2p", "0.25",
            "--lambda-min", "-1", "--lambda-max", "1.5", "--steps", "3",
        )
        assert code == 3
        assert err.startswith(b"error: inadmissible:")

    def test_zero_reference_exits_3(self, capsysbinary):
        code, _, _ = run_cli(
            capsysbinary,
            "sweep", "--p1p", "0", "--p2p", "0.25",
            "--lambda-min", "0", "--lambda-max", "1", "--steps", "2",
        )
        assert code == 3


class TestRange:
    @pytest.mark.parametrize(
        "a,b,lo,hi,tag_min,tag_max",
        [
            ("0.25", "0.25", -1.0, 1.0, "trigonometric", "trigonometric"),
            ("0.1", "0.1", -1.0, 4.0, "trigonometric", "hyperbolic"),
            ("0.5", "0.5", -1.0, 0.0, "trigonometric", "trigonometric"),
        ],
    )
    def test_examples(self, capsysbinary, a, b, lo, hi, tag_min, tag_max):
        code, out, _ = run_cli(capsysbinary, "range", "--p1p", a, "--p2p", b)
        assert code == 0
        fields = dict(field.split("=") for field in out.decode().split())
        assert float(fields["lambda_min"]) == pytest.approx(lo, abs=1e-12)
        assert float(fields["lambda_max"]) == pytest.approx(hi, abs=1e-12)
        assert fields["regime_at_min"] == tag_min
        assert fields["regime_at_max"] == tag_max

    def test_zero_reference_exits_3(self, capsysbinary):
        code, _, err = run_cli(capsysbinary, "range", "--p1p", "0", "--p2p", "0.25")
        assert code == 3
        assert err.startswith(b"error: inadmissible:")


class TestEntryPoint:
    def test_module_invocation(self, tmp_path):
        result = subprocess.run(
            [sys.executable, "-m", "ctxprob", "analyze", "--p-s", "0.9", "--p1p", "0.1", "--p2p", "0.1"],
            capture_output=True,
            check=False,
        )
        assert result.returncode == 0
        assert json.loads(result.stdout)["lambda"] == pytest.approx(3.5, abs=1e-12)

    def test_module_invocation_usage_error(self):
        result = subprocess.run(
            [sys.executable, "-m", "ctxprob", "analyze"],
            capture_output=True,
            check=False,
        )
        assert result.returncode == 1
        assert result.stderr.startswith(b"error: usage:")
