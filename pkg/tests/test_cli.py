import json
import os

import pytest
from click.testing import CliRunner

from isog3.cli import cli, main, parse_q
from isog3.errors import InvalidInput


@pytest.fixture
def run(capsys, monkeypatch):
    """Call the console entry point; returns (exit code, parsed stdout or None, stderr)."""
    def invoke(args, env=None):
        for k, v in (env or {}).items():
            monkeypatch.setenv(k, v)
        code = main(list(args))
        captured = capsys.readouterr()
        out = captured.out.strip()
        return code, (json.loads(out) if out.startswith("{") else out or None), captured.err
    return invoke


def test_parse_q():
    assert parse_q("3^4") == (3, 4)
    assert parse_q("27") == (3, 3)
    for bad in ("3^7", "6", "4^2", "abc"):
        with pytest.raises(InvalidInput):
            parse_q(bad)


def test_char3_on_x5_plus_x(run):
    code, out, _ = run(["char3", "--q", "3", "--f", "0,1,0,0,0"])
    assert code == 0
    assert out["frobenius_check"] is True
    assert out["certificate"]["passed"] is True
    assert out["result"]["curve"]["char"] == 3


def test_char3_with_explicit_modulus(run):
    code, out, _ = run(["char3", "--q", "3^2", "--modulus", "1,0,1", "--f", "0,1,0,3,0"])
    assert code == 0 and out["frobenius_check"]
    assert out["input"]["modulus"] == ["1", "0", "1"]


@pytest.mark.parametrize("args", [
    ["char3", "--q", "3", "--f", "0,x,0,0,0"],
    ["char3", "--q", "3", "--f", "0,1,0"],
    ["char3", "--q", "3", "--f", "0,9,0,0,0"],
    ["char3", "--q", "3^7", "--f", "0,1,0,0,0"],
    ["char3", "--q", "5", "--f", "0,1,0,0,0"],
    ["char3", "--q", "3^2", "--modulus", "2,0,1", "--f", "0,1,0,0,0"],
    ["char3", "--q", "3", "--f", "1,0,0,0,0"],            # supersingular
    ["char3", "--q", "3"],                                  # missing --f
    ["sweep", "--q", "3^7", "--count", "2", "--seed", "1"],
    ["complex", "--z", "1,2,3", "--prec", "50"],
    ["complex", "--z", "1,2,3,4", "--prec", "5000"],
    ["bogus"],
])
def test_invalid_input_exits_3(args, run):
    code, out, err = run(args)
    assert code == 3 and out is None
    diag = json.loads(err.strip().splitlines()[-1])
    assert diag["exit_code"] == 3 and diag["error"]


def test_degenerate_point_exits_2(run):
    code, out, err = run(["complex", "--z", "0,1,2,3", "--prec", "30"])
    assert code == 2 and out is None
    assert json.loads(err)["error"] == "OnArrangement"


def test_sweep_is_deterministic_and_thread_independent():
    args = ["sweep", "--q", "3", "--count", "12", "--seed", "1"]
    runner = CliRunner()
    a = runner.invoke(cli, args).stdout
    b = runner.invoke(cli, args).stdout
    c = runner.invoke(cli, args, env={"ISOG3_THREADS": "2"}).stdout
    assert a == b == c
    report = json.loads(a)
    assert report["count"] == 12 and report["certificate_passes"] == 12
    assert report["frobenius_passes"] == 12 and report["failures"] == {}
    assert "timing" not in report


def test_sweep_q9_seed7(run):
    code, out, _ = run(["sweep", "--q", "9", "--count", "100", "--seed", "7"])
    assert code == 0 and out["frobenius_passes"] == 100


def test_sweep_timing_and_figures(tmp_path, run):
    code, out, _ = run(["sweep", "--q", "3", "--count", "5", "--seed", "2", "--timing",
                        "--plot-dir", str(tmp_path)])
    assert code == 0
    assert set(out["timing"]) == {"total", "mean", "median", "max"}
    assert sorted(os.path.basename(f) for f in out["figures"]) == ["sweep_outcomes.png", "sweep_timing.png"]
    assert all(os.path.getsize(f) > 0 for f in out["figures"])


def test_figures_are_byte_stable(tmp_path, run):
    for d in ("a", "b"):
        run(["sweep", "--q", "3", "--count", "4", "--seed", "3", "--plot-dir", str(tmp_path / d)])
    a = (tmp_path / "a" / "sweep_outcomes.png").read_bytes()
    b = (tmp_path / "b" / "sweep_outcomes.png").read_bytes()
    assert a == b


def test_bad_thread_setting(run):
    code, _, _ = run(["sweep", "--q", "3", "--count", "2", "--seed", "1"], env={"ISOG3_THREADS": "many"})
    assert code == 3


def test_verify_salmon(run):
    code, out, _ = run(["verify", "salmon"])
    assert code == 0 and out["passed"]
    assert out["lambda"] == "1/3125" and out["agreements"] == 100 and out["samples"] == 100


def test_verify_burkhardt(run):
    code, out, _ = run(["verify", "burkhardt", "--samples", "10"])
    assert code == 0 and out["passed"]
    assert out["kernel_map"]["printed_mb_burkhardt_value"] == "-39936"
    assert len(out["coble"]["corrections"]) == 3


def test_verify_hessian_with_figure(tmp_path, run):
    code, out, _ = run(["verify", "hessian", "--samples", "3", "--prec", "40", "--plot-dir", str(tmp_path)])
    assert code == 0 and out["passed"]
    assert [os.path.basename(f) for f in out["figures"]] == ["hessian_residuals.png"]


def test_verify_unknown_identity(run):
    code, _, _ = run(["verify", "riemann"])
    assert code == 3


def test_complex_command(run):
    code, out, _ = run(["complex", "--z", "1,2,-3,5/7", "--prec", "40"])
    assert code == 0
    assert set(out) >= {"alpha", "secants", "branch_values", "result", "residuals"}
    assert len(out["branch_values"]) == 6 and len(out["secants"]) == 4


def test_iso_command(run):
    code, out, _ = run(["iso", "--q", "3", "--f", "0,1,0,0,0", "--g", "0,2,0,0,0"])
    assert code == 0 and out["isomorphic"] is True
    assert out["witness"]["field"]["characteristic"] == 3
    code, out, _ = run(["iso", "--q", "3", "--f", "0,1,0,0,0", "--g", "0,1,0,0,0", "--max-ext", "1"])
    assert code == 0


def test_help_exits_zero(run):
    code, out, _ = run(["--help"])
    assert code == 0 and "char3" in out


def test_process_pool_merges_in_input_order():
    from isog3.cli import run_sweep
    from isog3.field_kernel import make_extension
    F = make_extension(3, 2)
    serial, _ = run_sweep(F, 6, 11, workers=1)
    pooled, _ = run_sweep(F, 6, 11, workers=2)
    assert serial == pooled
