import csv
import io
import math
import subprocess
import sys

import pytest

from ricebounds import cli
from ricebounds.errors import DomainError
from ricebounds.quadrature import DEFAULT_CONFIG
from ricebounds.sweep import PRESETS, Column, SweepSpec, evaluate, format_value, preset, run_sweep

from .oracle_values import ILHI, TORONTO


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def parse_eval(line):
    function, method, value, est = line.split()
    assert value.startswith("value=") and est.startswith("est_error=")
    return function, method, float(value[6:]), est[10:]


# ---- eval

def test_eval_rice_trivial(capsys):
    code, out, _ = run(capsys, "eval", "rice", "--k", "0", "--x", "1", "--method", "quadrature")
    assert code == 0
    function, method, value, est = parse_eval(out.strip())
    assert (function, method) == ("rice", "quadrature")
    assert value == pytest.approx(1 - math.exp(-1), abs=1e-15)
    # 17 significant figures and a 3-significant-figure error
    assert len(out.split()[2].split("=")[1].split("e")[0].replace(".", "")) == 17
    assert len(est.split("e")[0].replace(".", "")) == 3


def test_eval_toronto_closed(capsys):
    code, out, _ = run(capsys, "eval", "toronto", "--m", "1", "--n", "0.5", "--r", "1", "--B", "2",
                       "--method", "closed-form")
    assert code == 0
    assert parse_eval(out)[2] == pytest.approx(TORONTO[(1, 0.5, 1, 2)], rel=1e-12)


def test_eval_ilhi_closed(capsys):
    code, out, _ = run(capsys, "eval", "ilhi", "--m", "1", "--n", "0.5", "--a", "2", "--z", "3",
                       "--method", "closed-form")
    assert code == 0
    assert parse_eval(out)[2] == pytest.approx(ILHI[(1, 0.5, 2, 3)], rel=1e-12)


def test_eval_toronto_marcum_without_n(capsys):
    code, out, _ = run(capsys, "eval", "toronto", "--m", "1", "--r", "1", "--B", "2", "--method", "marcum")
    assert code == 0
    assert parse_eval(out)[2] == pytest.approx(TORONTO[(1, 0, 1, 2)], abs=1e-12)
    code, _, err = run(capsys, "eval", "toronto", "--m", "1", "--r", "1", "--B", "2")
    assert code == 2 and "--n" in err


def test_eval_domain_error_exit_code(capsys):
    code, out, err = run(capsys, "eval", "rice", "--k", "1.5", "--x", "1")
    assert code == 2 and out == "" and "k must lie in [0, 1]" in err
    code, _, err = run(capsys, "eval", "rice", "--k", "1", "--x", "1", "--method", "marcum")
    assert code == 2 and "k = 1" in err


def test_eval_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as info:
        cli.main(["eval", "rice", "--k", "0.5"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        cli.main(["eval", "ilhi", "--m", "1", "--n", "1", "--a", "2", "--z", "1", "--method", "series"])
    assert info.value.code == 2


def test_eval_numerical_error_exit_code(capsys):
    code, _, err = run(capsys, "eval", "rice", "--k", "0.5", "--x", "1", "--tol", "1e-20")
    assert code == 3 and "ToleranceError" in err
    code, _, err = run(capsys, "eval", "ilhi", "--m", "1", "--n", "0.5", "--a", "0", "--z", "900")
    assert code == 3 and "OverflowError" in err


# ---- tolerance plumbing

def test_tolerance_precedence(monkeypatch):
    monkeypatch.delenv(cli.TOL_ENV, raising=False)
    assert cli.quad_config() is DEFAULT_CONFIG
    monkeypatch.setenv(cli.TOL_ENV, "1e-6")
    assert cli.quad_config().rel_tol == 1e-6
    assert cli.quad_config(1e-9).rel_tol == 1e-9
    monkeypatch.setenv(cli.TOL_ENV, "loose")
    with pytest.raises(DomainError):
        cli.quad_config()
    with pytest.raises(DomainError):
        cli.quad_config(-1.0)


# ---- registry

def test_evaluate_dispatch():
    assert evaluate("rice", "bound-upper", {"k": 0.5, "x": 1.0}).value > evaluate("rice", "quadrature", {"k": 0.5, "x": 1.0}).value
    with pytest.raises(DomainError):
        evaluate("rice", "closed-form", {"k": 0.5, "x": 1.0})
    with pytest.raises(DomainError):
        evaluate("rice", "quadrature", {"k": 0.5})
    with pytest.raises(DomainError):
        evaluate("rice", "quadrature", {"k": 0.5, "x": 1.0, "z": 2.0})
    with pytest.raises(DomainError):
        evaluate("bessel", "quadrature", {})
    with pytest.raises(DomainError):
        evaluate("toronto", "marcum", {"m": 1, "n": 0.7, "r": 1, "B": 2})


# ---- sweep

def test_column_parse():
    col = Column.parse("closed-form@m=1;n=0.5")
    assert col.overrides == (("m", 1.0), ("n", 0.5))
    assert col.label == "closed-form@m=1;n=0.5"
    assert Column.parse("quadrature").label == "quadrature"
    with pytest.raises(DomainError):
        Column.parse("closed@n=1")
    with pytest.raises(DomainError):
        Column.parse("quadrature@n")


def test_sweep_spec_validation():
    cols = (Column.parse("quadrature"),)
    with pytest.raises(DomainError):
        SweepSpec("rice", {"k": 0.5}, "x", 0.0, 1.0, 1, cols)
    with pytest.raises(DomainError):
        SweepSpec("rice", {"k": 0.5}, "x", 1.0, 1.0, 5, cols)
    with pytest.raises(DomainError):
        SweepSpec("rice", {"x": 0.5}, "x", 0.0, 1.0, 5, cols)
    with pytest.raises(DomainError):
        SweepSpec("rice", {"k": 0.5}, "x", 0.0, 1.0, 5, (Column.parse("closed-form"),))
    with pytest.raises(DomainError):
        SweepSpec("rice", {"k": 0.5}, "x", 0.0, 1.0, 5, (Column.parse("quadrature@x=1"),))


def test_two_point_sweep():
    spec = SweepSpec("rice", {"k": 0.5}, "x", 1.0, 2.0, 2, (Column.parse("quadrature"), Column.parse("bound-lower")))
    buf = io.StringIO()
    assert run_sweep(spec, buf) == 0
    text = buf.getvalue()
    assert "\r" not in text and text.endswith("\n")
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["x", "quadrature", "bound-lower"]
    assert len(rows) == 3
    assert rows[1][0] == format_value(1.0) == "1.0000000000000000e+00"
    assert float(rows[2][1]) > float(rows[2][2])


def test_sweep_failures_leave_empty_cells():
    spec = SweepSpec("rice", {}, "k", 0.5, 1.0, 2, (Column.parse("quadrature@x=2"), Column.parse("marcum@x=2")))
    warn = io.StringIO()
    buf = io.StringIO()
    assert run_sweep(spec, buf, warn=warn) == 1
    last = buf.getvalue().splitlines()[-1].split(",")
    assert last[1] != "" and last[2] == ""
    assert "marcum" in warn.getvalue()


def test_figure4_columns():
    spec = preset("figure4", steps=3)
    rows = list(csv.reader(io.StringIO(_sweep_text(spec))))
    assert rows[0] == ["r", "closed-form@n=0.5", "quadrature@n=0.4", "quadrature@n=0.5", "quadrature@n=0.6"]
    for row in rows[1:]:
        closed, q4, q5, q6 = map(float, row[1:])
        assert closed == pytest.approx(q5, rel=1e-9)


def _sweep_text(spec):
    buf = io.StringIO()
    run_sweep(spec, buf)
    return buf.getvalue()


def test_preset_overrides():
    spec = preset("figure3", {"x": 40.0}, steps=5)
    assert spec.fixed["x"] == 40.0 and spec.steps == 5
    assert PRESETS["figure3"][1].fixed["x"] == 80.0
    with pytest.raises(DomainError):
        preset("figure9")
    with pytest.raises(DomainError):
        preset("figure1", {"x": 3.0})


def test_all_presets_construct():
    assert sorted(PRESETS) == [f"figure{i}" for i in range(1, 7)]
    for name in PRESETS:
        assert preset(name).steps >= 2


# ---- CLI sweep / preset / verify

def test_cli_sweep_to_file(tmp_path, capsys):
    out = tmp_path / "s.csv"
    code, _, _ = run(capsys, "sweep", "toronto", "--vary", "r", "--lo", "0.5", "--hi", "1", "--steps", "3",
                     "--set", "m=3", "--set", "B=2", "--columns", "closed-form@n=2.5", "quadrature@n=2.5",
                     "--out", str(out))
    assert code == 0
    rows = list(csv.reader(out.open()))
    assert len(rows) == 4 and rows[0][0] == "r"


def test_cli_sweep_bad_spec(capsys):
    code, _, err = run(capsys, "sweep", "rice", "--vary", "x", "--lo", "1", "--hi", "0", "--columns", "quadrature",
                       "--set", "k=0.5")
    assert code == 2 and "lo must be below hi" in err


def test_preset_list(capsys):
    code, out, _ = run(capsys, "preset", "list")
    assert code == 0
    for i in range(1, 7):
        assert f"figure{i}:" in out


def test_preset_run_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run(capsys, "preset", "run", "figure1", "--steps", "12", "-o", str(a))[0] == 0
    assert run(capsys, "preset", "run", "figure1", "--steps", "12", "-o", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify")
    assert code == 0
    assert out.count("PASS") == len(cli.IDENTITIES) + 1


def test_verify_loose_tolerance(capsys):
    code, out, _ = run(capsys, "verify", "--tol", "1e-4")
    assert code == 0 and "1.00e-02" in out


def test_verify_impossible_tolerance(capsys):
    code, _, err = run(capsys, "verify", "--tol", "1e-20")
    assert code == 3 and "ToleranceError" in err


def test_verify_failure_names_identity(capsys, monkeypatch):
    broken = cli.IDENTITIES + [("deliberately broken", "max abs", 1e-9, lambda cfg: 1.0)]
    monkeypatch.setattr(cli, "IDENTITIES", broken)
    code, out, err = run(capsys, "verify")
    assert code == 1
    assert "deliberately broken" in err and "FAIL" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ricebounds", "eval", "rice", "--k", "0", "--x", "1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.startswith("rice quadrature value=6.3212055882855")
