import json
import subprocess
import sys

import pytest

from twistderiv.algebra import algebra_to_dict, map_to_dict
from twistderiv.cli import run
from twistderiv.instances import case3_example, quad_derivation


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr().out
    return code, out.strip()


def test_classify_d5_exact(capsys):
    code, out = call(capsys, "classify", "--d", "5")
    assert code == 0
    assert out == '{"endos":[{"kind":"id"},{"kind":"conj","omega_image":"1-omega"}]}'


def test_inner_exact_outputs(capsys):
    base = ["inner", "--d", "3", "--sigma", "id", "--tau", "conj", "--beta", "0"]
    assert call(capsys, *base, "--alpha", "6") == (0, '{"inner":true,"witness":{"a":0,"b":-1}}')
    assert call(capsys, *base, "--alpha", "1") == (0, '{"inner":false,"candidate":{"u":"0","v":"-1/6"}}')


def test_inner_omega_counterexample(capsys):
    code, out = call(capsys, "inner", "--d", "5", "--sigma", "id", "--tau", "conj", "--alpha", "1", "--beta", "2")
    assert code == 0 and json.loads(out)["inner"] is False


def test_ufd_delta(capsys):
    code, out = call(capsys, "ufd-delta", "--sigma-image", "x", "--tau-image", "2*x", "--apply", "x^3")
    assert code == 0
    obj = json.loads(out)
    assert obj["g"] == "x" and obj["result"] == "7*x^2"
    code, out = call(capsys, "ufd-delta", "--sigma-image", "x", "--tau-image", "x", "--apply", "x")
    assert code == 1 and json.loads(out)["code"] == "sigma_equals_tau"


def test_leibniz_check_deterministic(capsys):
    argv = ["leibniz-check", "--d", "-7", "--sigma", "conj", "--tau", "id", "--alpha", "3", "--beta", "-4"]
    a = call(capsys, *argv, "--seed", "9", "--samples", "200")
    b = call(capsys, *argv, "--seed", "9", "--samples", "200")
    assert a == b and a[0] == 0
    assert json.loads(a[1])["holds"] is True


def test_leibniz_check_reports_failure_with_exit_2(capsys):
    argv = ["leibniz-check", "--d", "3", "--sigma", "id", "--tau", "id", "--alpha", "1", "--beta", "0"]
    code, out = call(capsys, *argv, "--samples", "50")
    assert code == 2
    assert json.loads(out)["holds"] is False


@pytest.mark.parametrize(
    "argv,err",
    [
        (["classify", "--d", "4"], "not_squarefree"),
        (["classify", "--d", "1"], "disallowed_d"),
        (["classify", "--d", "abc"], "invalid_input"),
        (["classify"], "invalid_input"),
        (["frobnicate"], "invalid_input"),
        (["inner", "--d", "3", "--sigma", "id", "--tau", "id", "--alpha", "1", "--beta", "0"], "sigma_equals_tau"),
        (["inner", "--d", "3", "--sigma", "sq", "--tau", "id", "--alpha", "1", "--beta", "0"], "invalid_input"),
        (["ufd-delta", "--sigma-image", "x^", "--tau-image", "x", "--apply", "x"], "poly_syntax"),
        (["verify", "--cert", "/nonexistent/cert.json"], "invalid_input"),
    ],
)
def test_input_errors_exit_1(capsys, argv, err):
    code, out = call(capsys, *argv)
    assert code == 1
    obj = json.loads(out)
    assert obj["code"] == err and obj["message"]


def _write_inputs(tmp_path, D):
    files = {}
    for name, obj in [
        ("algebra", algebra_to_dict(D.algebra)),
        ("sigma", map_to_dict(D.sigma)),
        ("tau", map_to_dict(D.tau)),
        ("derivation", map_to_dict(D.values)),
    ]:
        path = tmp_path / f"{name}.json"
        path.write_text(json.dumps(obj))
        files[name] = str(path)
    return files


def _universal_argv(files, case):
    argv = ["universal", "--case", str(case)]
    for name in ("algebra", "sigma", "tau", "derivation"):
        argv += [f"--{name}", files[name]]
    return argv


@pytest.mark.parametrize(
    "case,D",
    [(1, quad_derivation(3, "id", "conj", 1, 0)), (2, quad_derivation(-5, "conj", "id", 2, 1)), (3, case3_example())],
)
def test_universal_then_verify(capsys, tmp_path, case, D):
    files = _write_inputs(tmp_path, D)
    cert_path = tmp_path / "cert.json"
    code, out = call(capsys, *_universal_argv(files, case), "--out", str(cert_path))
    assert code == 0
    assert json.loads(out) == {"case": case, "out": str(cert_path), "all_pass": True}
    code, out = call(capsys, "verify", "--cert", str(cert_path))
    assert code == 0 and json.loads(out)["all_pass"] is True
    # printing to stdout gives the same bytes as the file
    code, out = call(capsys, *_universal_argv(files, case))
    assert out + "\n" == cert_path.read_text()


def test_verify_broken_certificate_exits_2(capsys, tmp_path):
    files = _write_inputs(tmp_path, quad_derivation(3, "id", "conj", 1, 0))
    cert_path = tmp_path / "cert.json"
    call(capsys, *_universal_argv(files, 1), "--out", str(cert_path))
    obj = json.loads(cert_path.read_text())
    obj["f_matrix"][0][0] = str(int(obj["f_matrix"][0][0].split("/")[0]) + 1)
    cert_path.write_text(json.dumps(obj))
    code, out = call(capsys, "verify", "--cert", str(cert_path))
    assert code == 2
    assert json.loads(out)["all_pass"] is False


def test_universal_wrong_case_exits_1(capsys, tmp_path):
    files = _write_inputs(tmp_path, quad_derivation(3, "id", "conj", 1, 0))
    code, out = call(capsys, *_universal_argv(files, 3))
    assert code == 1 and json.loads(out)["code"] == "invertible_endo"


def test_verify_rejects_malformed_json(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, out = call(capsys, "verify", "--cert", str(bad))
    assert code == 1


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "twistderiv", "classify", "--d", "-1"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert proc.stdout == '{"endos":[{"kind":"id"},{"kind":"conj","sqrt_image":"-sqrt(-1)"}]}\n'
