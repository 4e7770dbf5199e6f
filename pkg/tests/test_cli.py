import io
import json

import pytest

from coxspec import graphs
from coxspec.cli import run
from coxspec.errors import InternalConsistencyError


def invoke(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_rho_eval_exact(capsys):
    code, out, _ = invoke(capsys, "rho", "eval", "--r", "4", "--n", "3", "--exact")
    assert code == 0
    assert out.strip() == "3/2"


def test_rho_eval_infinity(capsys):
    code, out, _ = invoke(capsys, "rho", "eval", "--r", "2", "--n", "3")
    assert code == 0 and out.strip() == "infinity"


def test_rho_eval_json(capsys):
    code, out, _ = invoke(capsys, "rho", "eval", "--r", "4", "--n", "3", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc == {"r": 4, "n": 3, "value": "3/2"}


def test_rho_solve_text(capsys):
    code, out, _ = invoke(capsys, "rho", "solve", "--r", "5")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[:4] == ["1,1,1,1,1", "1,2,5,5", "1,3,3,3", "2,2,2,2"]
    assert lines[4] == "exhaustive: true"


def test_rho_solve_rational_json(capsys):
    code, out, _ = invoke(capsys, "rho", "solve", "--r", "9/2", "--json")
    doc = json.loads(out)
    assert code == 0
    assert doc["solutions"] == [] and doc["exhaustive"] is True


def test_rho_classify(capsys):
    code, out, _ = invoke(capsys, "rho", "classify", "--branches", "1,2,6", "--json")
    doc = json.loads(out)
    assert doc["tag"] == "hyperbolic" and doc["rho4"] == "85/21"


def test_sigma_sets_band_r4(capsys):
    code, out, _ = invoke(capsys, "sigma", "sets", "--r", "4", "--kmax", "3", "--json")
    doc = json.loads(out)
    assert doc["band"] == [2.0, 2.0]
    assert doc["lambda1"][:2] == [0, "4/3"]


def test_sigma_member(capsys):
    code, out, _ = invoke(capsys, "sigma", "member", "--r", "5", "--alpha", "5/4", "--json")
    doc = json.loads(out)
    assert doc["member"] is True
    assert {"part": "lambda1", "k": 1, "value": 1.25} in doc["parts"]


def test_sigma_phi(capsys):
    code, out, _ = invoke(capsys, "sigma", "phi", "--r", "5", "--alpha", "1", "--k", "2", "--json")
    doc = json.loads(out)
    assert doc["value"] == "11/8" and doc["recurrent"] == "11/8" and doc["delta"] == 0


def test_graph_pipeline_round_trip(capsys, tmp_path):
    code, out, _ = invoke(capsys, "graph", "emit", "--star", "1,2,5")
    assert code == 0
    path = tmp_path / "star.edges"
    path.write_text(out)
    code, out2, _ = invoke(capsys, "graph", "classify", str(path), "--json")
    assert code == 0
    doc = json.loads(out2)
    assert doc["name"] == "~E8" and doc["tag"] == "extended"


def test_graph_emit_json_round_trip(capsys, tmp_path):
    code, out, _ = invoke(capsys, "graph", "emit", "--star", "1,2,5", "--format", "json")
    path = tmp_path / "star.json"
    path.write_text(out)
    code, out2, _ = invoke(capsys, "graph", "emit", "--star", "1,2,5", "--format", "json")
    assert out2 == out  # byte-stable
    code, out3, _ = invoke(capsys, "graph", "index", str(path), "--json")
    doc = json.loads(out3)
    assert doc["index"] == pytest.approx(2.0, abs=1e-10)


def test_graph_spectrum_stdin(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO("a b\nb c\n"))
    code, out, _ = invoke(capsys, "graph", "spectrum", "-", "--json")
    doc = json.loads(out)
    assert doc["spectrum"][2] == pytest.approx(2**0.5, abs=1e-10)


def test_graph_loop_file_is_domain_error(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO("a a\n"))
    code, out, err = invoke(capsys, "graph", "index", "-")
    assert code == 1
    assert out == "" and "loop" in err


def test_missing_file_is_domain_error(capsys):
    code, _, err = invoke(capsys, "graph", "index", "/nonexistent/file")
    assert code == 1 and err


def test_unknown_command_is_usage_error(capsys):
    code, _, _ = invoke(capsys, "bogus")
    assert code == 2
    code, _, _ = invoke(capsys, "rho", "bogus")
    assert code == 2


def test_internal_consistency_exit_code(capsys, monkeypatch, tmp_path):
    def boom(*a, **k):
        raise InternalConsistencyError("synthetic disagreement")

    monkeypatch.setattr("coxspec.cli.gr.smith_classify", boom)
    path = tmp_path / "g.edges"
    path.write_text("a b\n")
    code, _, err = invoke(capsys, "graph", "classify", str(path))
    assert code == 3 and "disagreement" in err


def test_coxeter_commands(capsys, tmp_path):
    path = tmp_path / "d4.edges"
    path.write_text(graphs.make_star((1, 1, 1, 1)).to_edge_text())

    code, out, _ = invoke(capsys, "coxeter", "standard", str(path), "--json")
    doc = json.loads(out)
    assert code == 0 and set(doc) == {"odd", "even", "parity"}

    code, out, _ = invoke(
        capsys, "coxeter", "orbit", str(path), "--vector", "b1.1=1,b2.1=1,b3.1=1,b4.1=1,c=2", "--tmax", "2", "--json"
    )
    doc = json.loads(out)
    assert all(row["vector"]["c"] == 2 for row in doc["orbit"])

    code, out, _ = invoke(capsys, "coxeter", "verify-transport", str(path), "--json")
    doc = json.loads(out)
    assert code == 0 and doc["max_defect"] <= 1e-8

    code, out, _ = invoke(capsys, "coxeter", "roots", str(path), "--bound", "4", "--json")
    doc = json.loads(out)
    assert doc["exhaustive"] is False and doc["hit_norm_bound"] is True

    code, out, _ = invoke(capsys, "coxeter", "classify-root", str(path), "--vector", "c=1", "--json")
    doc = json.loads(out)
    assert doc["verdict"] == "singular" and doc["t"] == 0 and doc["vertex"] == "c"

    code, out, _ = invoke(capsys, "coxeter", "character", str(path), "--vector", "c=1", "--json")
    doc = json.loads(out)
    assert doc["character"]["c"] == 0
    assert doc["character"]["b1.1"] == 1


def test_coxeter_regular_vector_is_domain_error(capsys, tmp_path):
    path = tmp_path / "d4.edges"
    path.write_text(graphs.make_star((1, 1, 1, 1)).to_edge_text())
    code, _, err = invoke(
        capsys, "coxeter", "character", str(path), "--vector", "b1.1=1,b2.1=1,b3.1=1,b4.1=1,c=2"
    )
    assert code == 1 and "singular" in err


def test_star_index_json_contract(capsys):
    code, out, _ = invoke(capsys, "star", "index", "--branches", "1,2,6", "--json")
    doc = json.loads(out)
    assert set(doc) == {"branches", "r", "index", "residual", "method", "cross_check_delta"}
    assert doc["method"] == "bisection"
    assert doc["cross_check_delta"] <= 1e-8


def test_star_verify_and_sweep(capsys):
    code, out, _ = invoke(capsys, "star", "verify", "--branches", "1,2,2", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["r"] == pytest.approx(2 + 3**0.5, abs=1e-8)

    code, out, _ = invoke(capsys, "star", "sweep", "--smax", "2", "--max-entry", "3", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["count"] == 9 and doc["worst"] <= 1e-7


def test_verify_all(capsys):
    code, out, _ = invoke(capsys, "verify", "all")
    assert code == 0
    lines = out.strip().splitlines()
    assert all(line.startswith("PASS") for line in lines[:-1])
    assert len(lines[:-1]) == 12


def test_json_output_is_single_document(capsys):
    code, out, _ = invoke(capsys, "star", "index", "--branches", "1,2,2", "--json")
    json.loads(out)  # raises if more than one document or extra text


def test_float_serialization_17_digits(capsys):
    code, out, _ = invoke(capsys, "graph", "emit", "--star", "1,1,1")
    assert code == 0
    code, out, _ = invoke(capsys, "star", "index", "--branches", "1,1,1", "--json")
    doc = json.loads(out)
    # 17 significant digits round-trip doubles exactly
    assert doc["index"] == pytest.approx(3**0.5, abs=1e-12)
    assert "1.7320508075688" in out


def test_env_tolerance_precedence(capsys, monkeypatch):
    monkeypatch.setenv("COXSPEC_TOL", "0.2")
    code, out, _ = invoke(capsys, "sigma", "member", "--r", "5", "--alpha", "1.2", "--json")
    doc = json.loads(out)
    assert doc["tol"] == 0.2  # env wins over the default
    code, out, _ = invoke(
        capsys, "sigma", "member", "--r", "5", "--alpha", "1.2", "--tol", "1e-9", "--json"
    )
    doc = json.loads(out)
    assert doc["tol"] == 1e-9  # explicit flag wins over env
    assert doc["member"] is False
