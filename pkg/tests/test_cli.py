import json
import subprocess
import sys

import pytest

from oeffect.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def parse_kv(text):
    return {k: float(v) for k, v in (line.split() for line in text.strip().splitlines())}


def test_predict(capsys):
    code, out, _ = run(capsys, "predict", "--a", "0.4", "--b", "0.7", "--c", "0.2")
    assert code == 0
    vals = parse_kv(out)
    assert vals["second_marginal"] == pytest.approx(0.7307692, abs=1e-7)
    assert vals["delta"] == pytest.approx(0.0307692, abs=1e-7)
    assert vals["qq"] == pytest.approx(0.0159151, abs=1e-7)
    assert "second_marginal 0.7307692\n" in out


def test_predict_frechet_violation(capsys):
    code, _, err = run(capsys, "predict", "--a", "0.5", "--b", "0.5", "--c", "0.6")
    assert code == 1
    assert "Fréchet" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["bogus"],
        [],
        ["predict", "--a", "0.4"],
        ["predict", "--a", "x", "--b", "0.7", "--c", "0.2"],
        ["sweep", "--step", "0.1"],
        ["sweep", "--c", "0.2", "--rule", "ab"],
        ["sweep", "--c", "0.2", "--step", "0.9"],
        ["qq", "--a", "0.4"],
        ["fit", "--data", "clinton-gore", "--model", "nope"],
    ],
)
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["validate", "/nonexistent.json"],
        ["qq", "--a", "0.9", "--b", "0.05", "--c", "0.5"],
        ["dynamics", "--a", "0.5", "--b", "0.5", "--c", "0.6"],
        ["dynamics", "--a", "0.5", "--b", "0.5", "--c", "0.2", "--sequence", "Q3"],
    ],
)
def test_validation_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 1


def test_precision_env(capsys, monkeypatch):
    monkeypatch.setenv("OEFFECT_PRECISION", "4")
    _, out, _ = run(capsys, "predict", "--a", "0.4", "--b", "0.7", "--c", "0.2")
    assert "second_marginal 0.7308\n" in out
    monkeypatch.setenv("OEFFECT_PRECISION", "20")
    assert run(capsys, "predict", "--a", "0.4", "--b", "0.7", "--c", "0.2")[0] == 2


def test_sweep_to_file(capsys, tmp_path):
    out = tmp_path / "s.csv"
    assert run(capsys, "sweep", "--c", "0.2", "--step", "0.1", "--output", str(out))[0] == 0
    first = out.read_bytes()
    run(capsys, "sweep", "--c", "0.2", "--step", "0.1", "--output", str(out))
    assert out.read_bytes() == first
    lines = first.decode().splitlines()
    assert lines[0] == "a,b,c,second_marginal,delta,qq,feasible"
    row = next(r for r in lines if r.startswith("0.4,0.7,"))
    assert row.split(",")[4] == "0.03076923"


def test_sweep_rule_stdout(capsys):
    code, out, _ = run(capsys, "sweep", "--rule", "ab", "--step", "0.25")
    assert code == 0
    for line in out.splitlines()[1:]:
        assert abs(float(line.split(",")[4])) <= 1e-12


def test_qq_params_and_data(capsys):
    code, out, _ = run(capsys, "qq", "--a", "0.4", "--b", "0.7", "--c", "0.2")
    assert code == 0 and parse_kv(out)["qq"] == pytest.approx(0.0159151, abs=1e-7)
    code, out, _ = run(capsys, "qq", "--data", "clinton-gore")
    assert code == 0 and "qq_observed" in out


def test_fit_both(capsys):
    code, out, _ = run(capsys, "fit", "--data", "clinton-gore", "--model", "both")
    assert code == 0
    report = json.loads(out)
    assert report["bayesian"]["param_count"] == 3
    assert report["quantum"]["param_count"] == 4
    assert {"model", "params", "loss", "param_count", "residuals", "predicted_marginals", "sign_match"} <= set(
        report["bayesian"]
    )


def test_fit_bayesian_only(capsys):
    code, out, _ = run(capsys, "fit", "--data", "clinton-gore", "--model", "bayesian")
    assert code == 0
    assert json.loads(out)["model"] == "bayesian"


def test_dynamics(capsys):
    code, out, _ = run(capsys, "dynamics", "--a", "0.6", "--b", "0.5", "--c", "0.3", "--sequence", "Q1", "--repeat", "2")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "step,asked,p_yy,p_yn,p_ny,p_nn,m_q1,m_q2"
    assert [float(line.split(",")[6]) for line in lines[1:]] == pytest.approx([0.6923077, 0.8350515], abs=1e-7)


def test_validate(capsys, tmp_path):
    code, out, _ = run(capsys, "validate", "clinton-gore")
    assert code == 0 and out.startswith("ok clinton-gore")
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"order1": {"cells": {"yy": 0.9, "yn": 0.9, "ny": 0, "nn": 0}},
                               "order2": {"cells": {"yy": 1, "yn": 0, "ny": 0, "nn": 0}}}))
    assert run(capsys, "validate", str(bad))[0] == 1


def test_quantum(capsys):
    code, out, _ = run(capsys, "quantum", "--psi", "0", "--phi", "0", "--theta1", "0", "--theta2", "0.7853981633974483")
    assert code == 0
    assert "Q1-first yy=0.5 yn=0.5 ny=0 nn=0" in out
    assert "Q2-first yy=0.25 yn=0.25 ny=0.25 nn=0.25" in out


def test_console_script_module():
    proc = subprocess.run(
        [sys.executable, "-m", "oeffect.cli", "predict", "--a", "0.5", "--b", "0.5", "--c", "0.6"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 1
