import math

import pytest

from specweyl.cli import run

from cli_cases import CONFIGS

_Q0 = str(CONFIGS / "regular_q0.json")
_HARM = str(CONFIGS / "harmonic.json")


def _lines(capsys):
    return capsys.readouterr().out.splitlines()


def test_eig_exact_values(capsys):
    assert run(["eig", "--model", _Q0, "--count", "2", "--csv"]) == 0
    lines = _lines(capsys)
    assert float(lines[0]) == pytest.approx(math.pi**2, rel=1e-9)
    assert float(lines[1]) == pytest.approx(4.0 * math.pi**2, rel=1e-9)


def test_eig_json_format(capsys):
    import json
    assert run(["eig", "--model", _Q0, "--count", "1", "--json"]) == 0
    doc = json.loads(_lines(capsys)[0])
    assert doc["eigenvalues"][0] == pytest.approx(math.pi**2, rel=1e-9)


def test_measure_json(capsys):
    import json
    assert run(["measure", "--model", _Q0, "--count", "2", "--c", "0.5"]) == 0
    doc = json.loads(_lines(capsys)[0])
    assert doc["atoms"][0]["weight"] == pytest.approx(2.0 * math.pi**2, rel=1e-7)
    assert doc["gauge"]["c"] == 0.5


def test_mfun_output(capsys):
    assert run(["mfun", "--model", _Q0, "--c", "0.5", "--z", "0,1"]) == 0
    lines = _lines(capsys)
    assert lines[0] == "re_z,im_z,re_M,im_M"
    import cmath
    s = cmath.sqrt(1j)
    expected = s / cmath.sin(s)
    assert float(lines[1].split(",")[2]) == pytest.approx(expected.real, rel=1e-7)
    assert float(lines[1].split(",")[3]) == pytest.approx(expected.imag, rel=1e-7)


def test_norming_header(capsys):
    assert run(["norming", "--model", _Q0, "--count", "1"]) == 0
    lines = _lines(capsys)
    assert lines[0] == "n,lambda,gamma2"
    assert float(lines[1].split(",")[2]) == pytest.approx(
        1.0 / (2.0 * math.pi**2), rel=1e-7)


def test_weber_ground_state(capsys):
    assert run(["weber", "--nu", "0,0", "--x", "2.0"]) == 0
    lines = _lines(capsys)
    row = lines[1].split(",")
    val = float(row[1]) * math.exp(float(row[3]))
    assert val == pytest.approx(math.exp(-1.0), rel=1e-9)


def test_out_file(tmp_path, capsys):
    path = tmp_path / "out.csv"
    assert run(["eig", "--model", _Q0, "--count", "1", "--csv",
                "--out", str(path)]) == 0
    assert capsys.readouterr().out == ""
    assert path.read_text().endswith("\n")


def test_usage_missing_model(capsys):
    assert run(["eig", "--model", "/no/such/file.json", "--count", "1"]) == 2
    assert "model file not found" in capsys.readouterr().err


def test_usage_bad_tol(capsys):
    assert run(["eig", "--model", _Q0, "--count", "1", "--tol", "0.5"]) == 2


def test_usage_bad_count(capsys):
    assert run(["eig", "--model", _Q0, "--count", "0"]) == 2


def test_usage_bad_angle(capsys):
    assert run(["hl-check", "--model", _HARM, "--angle", "7.0",
                "--radii", "100,1000"]) == 2


def test_usage_bad_radii(capsys):
    assert run(["bm-check", "--model0", _HARM, "--model1", _HARM,
                "--angle", "1.5", "--radii", "1000,100"]) == 2


def test_usage_unknown_command(capsys):
    assert run(["frobnicate"]) == 2


def test_numeric_failure_exit_code(capsys):
    # interval straddling a gauge pole: DirichletCollision, exit 3
    assert run(["invert", "--model", _HARM, "--c", "0",
                "--interval", "2.5,3.5"]) == 3
    assert "DirichletCollision" in capsys.readouterr().err


def test_numeric_failure_krein_real_z(capsys):
    assert run(["krein-check", "--model", _Q0, "--c", "0.5",
                "--n-terms", "8", "--z", "5,0"]) == 3
    assert "SpecweylError" in capsys.readouterr().err
