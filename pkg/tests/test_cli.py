import json
import subprocess
import sys

import pytest

from pglinset.cli import ENV_PREFIX, build_parser, run


def test_env_prefix():
    assert ENV_PREFIX == "LINSET_"


def test_env_then_flag_precedence(monkeypatch):
    monkeypatch.setenv("LINSET_P", "5")
    monkeypatch.setenv("LINSET_SEED", "9")
    args = build_parser().parse_args(["counts"])
    assert args.p == 5 and args.seed == 9
    args = build_parser().parse_args(["counts", "--p", "7"])
    assert args.p == 7
    monkeypatch.delenv("LINSET_P")
    assert build_parser().parse_args(["counts"]).p == 3


def test_env_bool(monkeypatch):
    monkeypatch.setenv("LINSET_ALLOW_OUT_OF_HYPOTHESIS", "yes")
    assert build_parser().parse_args(["counts"]).allow_out_of_hypothesis


def test_counts_ok(capsys):
    code, rep = run(["counts", "--p", "5", "--t", "5"])
    assert code == 0 and rep["subline_count"] == 81224
    out = json.loads(capsys.readouterr().out)
    assert out["tower"]["q"] == 5 and out["command"] == "counts"


@pytest.mark.parametrize("argv", [
    ["counts", "--p", "3", "--t", "5"],          # q < t
    ["verify-main", "--p", "2"],                 # q = 2
    ["counts", "--p", "4"],                      # not prime
    ["sublines", "--p", "3", "--t", "4", "--nu", "2"],
    ["verify-main", "--p", "3", "--t", "4", "--exhaustive"],
    ["counts", "--p", "2", "--t", "23"],         # sizing bound
])
def test_invalid_input_exit_2(argv, capsys):
    code, rep = run(argv)
    assert code == 2 and rep is None
    assert "error" in capsys.readouterr().err


def test_failed_check_exit_1(capsys):
    code, rep = run(["sublines", "--p", "2", "--t", "3", "--allow-out-of-hypothesis"])
    assert code == 1 and rep["unclassified"] > 0
    capsys.readouterr()


@pytest.mark.parametrize("cmd", ["sublines", "verify-main", "hypersurface", "powers", "counts"])
def test_subcommands_ok_at_3_3(cmd, capsys):
    code, rep = run([cmd, "--p", "3", "--t", "3"])
    assert code == 0 and rep["ok"]
    capsys.readouterr()


def test_nrc_and_splash(capsys):
    code, rep = run(["nrc", "--p", "5", "--t", "3", "--nu", "2"])
    assert code == 0 and rep["sublines"] == 31 and rep["by_family"] == {1: 31}
    code, rep = run(["splash", "--p", "3", "--t", "3"])
    assert code == 0 and rep["lines"] == 432 and rep["pseudoregulus"] == 432
    capsys.readouterr()


def test_splash_sampled_t4(capsys):
    code, rep = run(["splash", "--p", "3", "--t", "4", "--samples", "5", "--seed", "3"])
    assert code == 0 and rep["mode"] == "sampled"
    capsys.readouterr()


def test_verify_main_exhaustive(capsys):
    code, rep = run(["verify-main", "--exhaustive", "--samples", "20", "--seed", "1"])
    assert code == 0
    assert rep["imaginary_centers"] == rep["imaginary_passed"] == rep["expected_imaginary"] == 432
    assert rep["non_imaginary_all_false"] == 20
    capsys.readouterr()


def strip_timing(rep):
    return {k: v for k, v in rep.items() if k != "elapsed_ms"}


def test_jobs_deterministic(capsys):
    a = run(["sublines", "--p", "3", "--t", "3", "--jobs", "1"])[1]
    b = run(["sublines", "--p", "3", "--t", "3", "--jobs", "2"])[1]
    assert a == b
    a = run(["verify-main", "--exhaustive", "--samples", "10", "--jobs", "1"])[1]
    b = run(["verify-main", "--exhaustive", "--samples", "10", "--jobs", "2"])[1]
    assert strip_timing(a) == strip_timing(b)
    capsys.readouterr()


def test_csv_output(tmp_path):
    out = tmp_path / "h.csv"
    code, _ = run(["hypersurface", "--format", "csv", "--out", str(out)])
    assert code == 0
    lines = out.read_text().strip().split("\n")
    assert lines[0] == "q,t,N1,N2,subline_count_formula,subline_count_enumerated,agree"
    assert lines[1] == "3,3,12,507,26,26,True"


def test_sublines_csv_has_family_table(capsys):
    run(["sublines", "--format", "csv"])
    text = capsys.readouterr().out
    assert "h,count,preimage_order" in text
    assert "1,13,1" in text and "2,13,2" in text


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "pglinset", "counts", "--p", "2", "--e", "2", "--t", "3"],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert json.loads(res.stdout)["subline_count"] == 42


def test_structured_flag_with_oracle(capsys):
    code, rep = run(["sublines", "--p", "2", "--e", "2", "--t", "3", "--structured", "--slow-oracle"])
    assert code == 0 and rep["algorithms"] == {"structured": 42, "triples": 42}
    capsys.readouterr()
