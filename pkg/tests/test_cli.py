from __future__ import annotations

import json
import subprocess
import sys
from fractions import Fraction as F

import pytest

from qclifford import QContext, dirac_full, parse_poly, poly_from_json
from qclifford.cli import main

U3 = "x0^3 - x0*x1^2 - 47/64*x0*x2^2"
CTX = QContext(F(4, 3), 2)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_harmonic_true(capsys):
    code, out, _ = run(capsys, "check-harmonic", "--q", "4/3", "--n", "2", "--poly", U3)
    assert code == 0 and "harmonic: true" in out


def test_check_harmonic_false_prints_residual(capsys):
    code, out, _ = run(capsys, "check-harmonic", "--q", "4/3", "--n", "2", "--poly", "x0^2")
    assert code == 1 and "residual: 7/4" in out
    code, out, _ = run(capsys, "check-harmonic", "--q", "4/3", "--n", "2", "--poly", "x0^2", "--format", "json")
    payload = json.loads(out)
    assert code == 1 and payload["harmonic"] is False
    assert payload["residual"] == [{"alpha": [0, 0, 0], "blade": "1", "coeff": "7/4"}]


def test_check_monogenic(capsys):
    assert run(capsys, "check-monogenic", "--q", "2", "--poly", "x1*e1 - x2*e2")[0] == 0
    code, out, _ = run(capsys, "check-monogenic", "--q", "2", "--poly", "x0", "--format", "json")
    assert code == 1 and json.loads(out)["residual"][0]["blade"] == "e0"


def test_conjugate_json_reparses(capsys):
    code, out, _ = run(capsys, "conjugate", "--q", "4/3", "--n", "2", "--poly", U3, "--format", "json", "--verify")
    payload = json.loads(out)
    assert code == 0 and payload["monogenic"] is True
    assert all(payload["checks"].values())
    f = poly_from_json(payload["F"], CTX)
    assert dirac_full(f).is_zero
    for key in ("V", "W", "h", "H", "F"):
        assert poly_from_json(json.dumps(payload[key]), CTX) == poly_from_json(payload[key], CTX)


def test_conjugate_with_supplied_poisson_solution(capsys):
    h4 = "-243/6475*x1^4 - 11421/414400*x2^4"
    code, out, _ = run(capsys, "conjugate", "--q", "4/3", "--poly", U3, "--poisson", h4, "--format", "json")
    assert code == 0
    w = poly_from_json(json.loads(out)["W"], CTX)
    assert w == parse_poly("-9/37*x1^3*e1 - 423/2368*x2^3*e2", CTX)


def test_conjugate_text(capsys):
    code, out, _ = run(capsys, "conjugate", "--q", "4/3", "--poly", U3)
    assert code == 0
    lines = dict(line.split(" = ", 1) for line in out.splitlines() if " = " in line)
    assert set(lines) == {"U", "g", "h", "W", "V", "H", "F"}
    assert parse_poly(lines["g"], CTX) == parse_poly("-x1^2 - 47/64*x2^2", CTX)


def test_fischer_and_poisson(capsys):
    code, out, _ = run(capsys, "fischer-decompose", "--q", "2", "--n", "3", "--poly", "x1^2*x3", "--verify")
    assert code == 0 and "check orthogonal: ok" in out
    code, out, _ = run(
        capsys, "fischer-decompose", "--kind", "monogenic", "--q", "2", "--poly", "x1^2 + x1*x2*e12", "--verify",
        "--format", "json",
    )
    assert code == 0 and set(json.loads(out)) >= {"M", "Q", "checks"}
    code, out, _ = run(capsys, "poisson", "--q", "4/3", "--poly", "x1^2 + 47/64*x2^2", "--verify")
    assert code == 0 and "check solves: ok" in out


def test_kernel_basis(capsys):
    code, out, _ = run(
        capsys, "kernel-basis", "--q", "4/3", "--n", "2", "--operator", "laplace_full", "--degree", "3",
        "--format", "json",
    )
    payload = json.loads(out)
    assert code == 0 and len(payload["basis"]) == 7


def test_qcomplex_commands(capsys):
    code, out, _ = run(capsys, "qbinomial", "--q", "1/2", "--k", "2", "--format", "json")
    assert code == 0
    assert json.loads(out) == [
        {"xexp": 2, "yexp": 0, "re": "1", "im": "0"},
        {"xexp": 1, "yexp": 1, "re": "0", "im": "3/2"},
        {"xexp": 0, "yexp": 2, "re": "-1/2", "im": "0"},
    ]
    code, out2, _ = run(capsys, "ck-extend", "--q", "1/2", "--poly", "x^2", "--format", "json")
    assert code == 0 and out2 == out
    assert run(capsys, "ck-extend", "--q", "1/2", "--poly", "x1*x2")[0] == 2


def test_poly_from_file_and_json(capsys, tmp_path):
    path = tmp_path / "u.txt"
    path.write_text(U3)
    assert run(capsys, "check-harmonic", "--q", "4/3", "--poly", f"@{path}")[0] == 0
    blob = json.dumps([{"alpha": [1, 1, 0], "blade": "1", "coeff": "1"}])
    assert run(capsys, "check-harmonic", "--q", "4/3", "--poly", blob)[0] == 0
    assert run(capsys, "check-harmonic", "--q", "4/3", "--poly", "@/nonexistent/file")[0] == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["check-harmonic", "--q", "4/3", "--n", "2", "--poly", "x0^2 +"],
        ["check-harmonic", "--q", "0.5", "--poly", "x1"],
        ["check-harmonic", "--q", "4/3", "--n", "1", "--poly", "x2"],
        ["conjugate", "--q", "1/2", "--poly", "x1"],
        ["conjugate", "--q", "2", "--poly", "x0^2"],
    ],
)
def test_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("qclifford: error:")


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["check-harmonic", "--poly", "x1"])
    assert info.value.code == 2


def test_subprocess_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "qclifford", "check-harmonic", "--q", "4/3", "--n", "2", "--poly", "x0^2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 1 and "residual: 7/4" in proc.stdout
