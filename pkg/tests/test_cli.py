import json

import pytest

from lorentzkit.cli import main
from lorentzkit.delta import box_power
from lorentzkit.parser import format_expression
from lorentzkit.spinor import make_covariant


def run_json(capsys, *argv):
    code = main(["--json", *argv])
    return code, json.loads(capsys.readouterr().out)


def test_matrix_command(capsys):
    code, data = run_json(capsys, "matrix", "--n", "3")
    assert code == 0
    assert data["results"]["matrix"] == [["3", "2"], ["0", "1"]]
    assert data["pass"] is True


def test_cg_command(capsys):
    code, data = run_json(capsys, "cg", "--r2", "1", "--s2", "1")
    assert code == 0
    assert data["results"]["representations"] == ["(0,0)", "(0,1)", "(1,0)", "(1,1)"]
    assert data["results"]["covariant_degrees"] == [0, 2]


def test_solve_boost_command(capsys):
    code, data = run_json(capsys, "solve-boost", "--n", "2", "--u", "p0*p1")
    assert code == 0
    assert data["results"]["solution"] == "1/2*p0^2"


def test_jet_decompose_command(capsys):
    code, data = run_json(capsys, "jet-decompose", "--dim", "2", "--m", "1", "--poly", "x0^2*x1 + x1^3")
    assert code == 0
    assert data["results"]["parts"] == ["x1", "x1"]


def test_lemma3_command_and_alias(capsys):
    code, data = run_json(capsys, "lemma3", "--dim", "2", "--m", "1", "--poly", "x0^2*x1 + x1^3")
    assert code == 0
    assert data["command"] == "lemma3"
    assert data["results"]["parts"] == ["x1", "x1"]
    assert data["pass"] is True

    code, alias = run_json(capsys, "jet-decompose", "--dim", "2", "--m", "1", "--poly", "x0^2*x1 + x1^3")
    assert alias["command"] == "jet-decompose"
    assert alias["results"] == data["results"]


def test_covariant_and_kernel_commands(capsys):
    code, data = run_json(capsys, "covariant", "--s2", "2")
    assert code == 0
    assert data["results"]["reflection_parity"] == 1

    code, data = run_json(capsys, "kernel-check", "--s2", "2", "--l-max", "3")
    assert code == 0
    assert len(data["checks"]) == 4


def test_extract_command(capsys):
    w = format_expression(make_covariant(box_power(1), 1))
    code, data = run_json(capsys, "extract", "--s2", "1", "--w", w)
    assert code == 0
    assert data["results"]["v"] == str(box_power(1))
    assert data["results"]["ambiguity_orders"] == [0]


def test_acyclicity_and_dual_norm_commands(capsys):
    code, data = run_json(capsys, "acyclicity", "--B0", "1", "--B1", "4", "--B", "2", "--N1", "10", "--eps1", "1/2")
    assert code == 0
    assert data["results"]["A_exact"] == "1/2"
    assert data["results"]["N"] == 5

    code, data = run_json(capsys, "dual-norm", "--kappa", "1,2,0,0", "--B", "2", "--beta", "1")
    assert code == 0
    assert data["results"]["value"] == "1/32"


def test_covariance_command(capsys):
    code, data = run_json(capsys, "covariance", "--a", "1,1,0,1")
    assert code == 0
    assert data["pass"] is True


def test_error_exit_code(capsys):
    code, data = run_json(capsys, "solve-boost", "--n", "2", "--u", "p0*p2")
    assert code == 2
    assert data["results"]["error"] == "NotInSpanError"
    assert data["pass"] is False


def test_parse_error_exit_code(capsys):
    code, data = run_json(capsys, "harmonic", "--poly", "p1 +")
    assert code == 2
    assert data["results"]["error"] == "ParseError"


def test_argparse_rejects_missing_arguments():
    with pytest.raises(SystemExit):
        main(["matrix"])


def test_pretty_output(capsys):
    assert main(["--pretty", "commutators"]) == 0
    out = capsys.readouterr().out
    assert "PASS" in out
    assert "commutators" in out


def test_verify_all_quick_is_deterministic(capsys):
    first = main(["verify-all", "--quick"])
    first_out = capsys.readouterr().out
    second = main(["verify-all", "--quick"])
    second_out = capsys.readouterr().out
    assert first == second == 0
    assert first_out == second_out
    assert json.loads(first_out)["command"] == "verify-all"
