import json
import math
import subprocess
import sys

import pytest

from hardy_cones import cli
from hardy_cones.suite import SuiteError, load_suite, parse_suite, run_suite


def run_cli(*args, env=None):
    proc = subprocess.run([sys.executable, "-m", "hardy_cones", *args], capture_output=True, text=True, env=env)
    return proc.returncode, proc.stdout, proc.stderr


def test_bundled_suite_size_and_coverage():
    recs = load_suite()
    assert len(recs) >= 20
    fams = {r.family for r in recs}
    for needed in ("hardy_power", "log_poly", "halfspace_logsine", "halfball_poly", "identity", "cone_eigen"):
        assert needed in fams


def test_parse_comments_and_option():
    recs = parse_suite("# header\n\nhardy_poly,1,1,0,1  # inline\noption,max_panels,64\nhardy_logsine,0.01,1\n")
    assert [r.family for r in recs] == ["hardy_poly", "hardy_logsine"]
    assert recs[0].max_panels is None and recs[1].max_panels == 64
    assert recs[1].line == 5


@pytest.mark.parametrize("text, fragment", [
    ("nonsense,1,2\n", "unknown family"),
    ("hardy_poly,1,1,0\n", "takes 4 fields"),
    ("hardy_poly,1,x,0,1\n", "non-numeric"),
    ("hardy_poly,1,1,0,1\nhardy_poly,0,1,0,1\n", "line 2"),
    ("log_poly,1,0.5,0,1\n", "L > R"),
    ("cone_logsine,3,3.5,1e-3,1\n", "line 1"),
    ("option,max_panels,0\n", "max_panels"),
    ("option,foo,3\n", "unknown option"),
    ("option,max_panels,2\nidentity,1,1,0.2,0.6,0.8,1.4\n", "max_panels >= 4"),
    ("identity,1,1,0.2,1.2,0.8,1.4\n", "not strictly inside"),
])
def test_parse_errors_name_record(text, fragment):
    with pytest.raises(SuiteError, match=fragment):
        parse_suite(text)


def test_coarse_cap_fails_checks():
    recs = parse_suite("option,max_panels,8\nhardy_power,0.002,0,1\nidentity,1,1,0.2,0.6,0.8,1.4\n")
    res = run_suite(recs)
    assert not any(r.passed for r in res)
    assert res[1].residual > 1e-6


def test_run_suite_parallel_same_order():
    recs = load_suite()[:10]
    a = [repr(r.row()) for r in run_suite(recs, workers=1)]
    b = [repr(r.row()) for r in run_suite(recs, workers=4)]
    assert a == b


# -- CLI

def test_constant_json():
    code, out, err = run_cli("constant", "--dim", "3", "--gamma", "1.5707963", "--fmt", "json")
    assert code == 0
    rows = json.loads(out)
    assert rows[0]["mu"] == pytest.approx(2.25, abs=1e-6)
    assert set(rows[0]) == set(cli.CONSTANT_COLUMNS)
    assert json.loads(err)["command"] == "constant"


def test_constant_dim2():
    assert cli.main(["constant", "--dim", "2", "--gamma", "0.7853981", "--fmt", "csv"]) == 0


def test_constant_degrees(capsys):
    assert cli.main(["constant", "--dim", "4", "--gamma", "90", "--degrees", "--fmt", "csv"]) == 0
    header, row = capsys.readouterr().out.strip().splitlines()
    vals = dict(zip(header.split(","), row.split(",")))
    assert float(vals["mu"]) == pytest.approx(4.0, rel=1e-7)


@pytest.mark.parametrize("argv", [
    ["constant", "--dim", "1", "--gamma", "1"],
    ["constant", "--dim", "13", "--gamma", "1"],
    ["constant", "--dim", "3", "--gamma", "3.2"],
    ["constant", "--dim", "3", "--gamma", "1", "--tol", "0"],
    ["constant", "--dim", "3"],
    ["sweep", "--dim", "3", "--gamma-min", "0.5", "--gamma-max", "2.5", "--steps", "1"],
    ["sweep", "--dim", "3", "--gamma-min", "2.5", "--gamma-max", "0.5", "--steps", "3"],
    ["bessel-zero", "--nu", "-1"],
    ["verify", "--suite", "/nonexistent/suite.txt"],
    ["constant", "--dim", "3", "--gamma", "1", "--fmt", "xml"],
    [],
])
def test_usage_errors_exit_2(argv):
    assert cli.main(argv) == 2


def test_bessel_zero_cli(capsys):
    assert cli.main(["bessel-zero", "--nu", "0.5", "--fmt", "csv"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "nu,b1,residual"
    assert float(out[1].split(",")[1]) == pytest.approx(math.pi, abs=1e-11)
    assert cli.main(["bessel-zero", "--nu", "0"]) == 0
    assert "2.40482555" in capsys.readouterr().out


def test_sweep_csv_columns_and_verdict(capsys):
    assert cli.main(["sweep", "--dim", "3", "--gamma-min", "0.5", "--gamma-max", "2.5", "--steps", "5", "--fmt", "csv"]) == 0
    lines = capsys.readouterr().out.split("\n")
    assert lines[0] == ",".join(cli.SWEEP_COLUMNS)
    assert lines[-2].startswith("# monotone=true bounds_ok=true")
    assert len(lines[1].split(",")) == 8


def test_sweep_json_flat(capsys):
    assert cli.main(["sweep", "--dim", "2", "--gamma-min", "0.5", "--gamma-max", "2.5", "--steps", "3", "--fmt", "json"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert len(rows) == 3 and all(list(r) == cli.SWEEP_COLUMNS for r in rows)
    assert rows[0]["lower_bessel"] is None
    assert rows[0]["lambda1"] == pytest.approx(math.pi ** 2 / 0.25, rel=1e-11)


def test_sweep_bound_violation_exit_1(monkeypatch):
    from hardy_cones import hardy
    monkeypatch.setattr(hardy, "BOUND_FLOOR", -10.0)  # forces negative slack everywhere
    assert cli.main(["sweep", "--dim", "3", "--gamma-min", "0.5", "--gamma-max", "2.5", "--steps", "3", "--fmt", "csv"]) == 1


def test_solver_failure_exit_1(monkeypatch):
    from hardy_cones.exceptions import ConvergenceError

    def boom(*a, **k):
        raise ConvergenceError("broken")

    monkeypatch.setattr(cli, "mu_cone", boom)
    assert cli.main(["constant", "--dim", "3", "--gamma", "1"]) == 1


def test_verify_bundled_exit_0(capsys):
    assert cli.main(["verify", "--fmt", "csv"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == ",".join(cli.VERIFY_COLUMNS)
    assert "failed=0" in out


def test_verify_support_violation_exit_2(tmp_path, capsys):
    p = tmp_path / "bad.txt"
    p.write_text("hardy_poly,1,1,0,1\ncone_poly,3,1.0,2,0,1\n")
    assert cli.main(["verify", "--suite", str(p)]) == 2
    assert "line 2" in capsys.readouterr().err


def test_verify_coarse_exit_1(tmp_path, capsys):
    p = tmp_path / "coarse.txt"
    p.write_text("option,max_panels,8\nidentity,1,1,0.2,0.6,0.8,1.4\n")
    assert cli.main(["verify", "--suite", str(p), "--fmt", "csv"]) == 1
    assert "FAILED line 2: identity" in capsys.readouterr().out


def test_out_and_manifest(tmp_path):
    out = tmp_path / "sweep.csv"
    assert cli.main(["sweep", "--dim", "4", "--gamma-min", "0.5", "--gamma-max", "2.0", "--steps", "4",
                     "--fmt", "csv", "--out", str(out)]) == 0
    data = out.read_bytes()
    assert b"\r" not in data and data.startswith(b"gamma,lambda1")
    man = json.loads((tmp_path / "sweep.csv.manifest.json").read_text())
    assert man["parameters"]["steps"] == 4 and len(man["err_est"]) == 4
    assert man["tool_version"] and man["wall_time_s"] >= 0


def test_csv_deterministic_across_thread_settings(tmp_path):
    import os
    args = ("sweep", "--dim", "5", "--gamma-min", "0.3", "--gamma-max", "2.9", "--steps", "6", "--fmt", "csv")
    env1 = dict(os.environ, HARDY_CONE_THREADS="1")
    env4 = dict(os.environ, HARDY_CONE_THREADS="4")
    assert run_cli(*args, env=env1)[1] == run_cli(*args, env=env4)[1]


def test_fmt_value():
    assert cli.fmt_value(1 / 3) == "0.333333333333"
    assert cli.fmt_value(None) == ""
    assert cli.fmt_value(True) == "true"
    assert cli.json_value(float("nan")) is None
