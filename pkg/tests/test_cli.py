import json
from pathlib import Path

import pytest

from nestlab.cli import main, proptest, run
from nestlab.documents import parse_document
from nestlab.errors import UnknownCommandError, UnknownSuiteError
from nestlab.suites import run_suite

FIXTURES = Path(__file__).parent / "fixtures"


def doc_path(name):
    return str(FIXTURES / f"{name}.json")


def invoke(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_alg_reports_dimension_and_basis(capsys):
    code, out, err = invoke(capsys, "alg", "--doc", doc_path("triangular"))
    assert code == 0 and err == ""
    payload = json.loads(out)
    assert payload["command"] == "alg"
    assert payload["result"]["dimension"] == 6
    assert len(payload["result"]["basis"]) == 6


def test_output_is_deterministic(capsys):
    _, first, _ = invoke(capsys, "support", "--doc", doc_path("triangular"))
    _, second, _ = invoke(capsys, "support", "--doc", doc_path("triangular"))
    assert first == second


def test_support_values(capsys):
    code, out, _ = invoke(capsys, "support", "--doc", doc_path("triangular"))
    assert code == 0
    assert json.loads(out)["result"]["values"] == [0, 0, 0, 1]


def test_m_of_phi(capsys):
    code, out, _ = invoke(capsys, "m-of-phi", "--doc", doc_path("support"))
    assert code == 0
    assert json.loads(out)["result"]["dimension"] == 7


def test_check_reflexive(capsys):
    code, out, _ = invoke(capsys, "check-reflexive", "--doc", doc_path("triangular"))
    assert code == 0
    assert json.loads(out)["result"]["reflexive"] is True


def test_decompose_factors(capsys):
    code, out, _ = invoke(capsys, "decompose", "--doc", doc_path("decompose"))
    assert code == 0
    factors = json.loads(out)["result"]["factors"]
    assert factors == [
        {"functional": ["1", "1", "0"], "vector": ["1", "0", "0"]},
        {"functional": ["0", "1", "0"], "vector": ["0", "1", "0"]},
    ]


def test_rank_one_check_uses_support_when_present(capsys):
    code, out, _ = invoke(capsys, "rank-one-check", "--doc", doc_path("triangular"))
    assert code == 0 and json.loads(out)["result"]["member"] is True
    code, out, _ = invoke(capsys, "rank-one-check", "--doc", doc_path("decompose"))
    assert code == 0 and json.loads(out)["result"]["member"] is True


def test_chain_validate(capsys):
    code, out, _ = invoke(capsys, "chain-validate", "--doc", doc_path("chain-pinf"))
    assert code == 0
    result = json.loads(out)["result"]
    assert result["labels"] == ["0", "A", "X"]
    assert result["finite_stratum"] == []
    assert result["p_infinity"] is True


def test_chain_check_left_continuous(capsys):
    code, out, _ = invoke(
        capsys, "chain-check", "left-continuous", "--doc", doc_path("chain-continuous")
    )
    assert code == 0
    assert json.loads(out)["result"]["result"] is False


def test_chain_check_p_infinity_flags(capsys):
    code, out, _ = invoke(
        capsys, "chain-check", "p-infinity", "--doc", doc_path("chain-pinf")
    )
    assert code == 0
    result = json.loads(out)["result"]
    assert result["result"] is True and result["finite_stratum_empty"] is True


def test_chain_regularize(capsys):
    code, out, _ = invoke(
        capsys, "chain-regularize", "--doc", doc_path("chain-continuous")
    )
    assert code == 0
    value = json.loads(out)["result"]["value"]
    assert value == {"0": "0", "A": "A", "B": "B", "C": "X", "X": "X"}


def test_chain_predict_m0(capsys):
    code, out, _ = invoke(capsys, "chain-predict", "m0", "--doc", doc_path("chain-step"))
    assert code == 0
    result = json.loads(out)["result"]
    assert result["phi"] == result["psi"]


def test_table_format(capsys):
    code, out, _ = invoke(
        capsys, "--format", "table", "chain-validate", "--doc", doc_path("chain-pinf")
    )
    assert code == 0
    assert out.splitlines()[0] == "command: chain-validate"
    assert 'labels: ["0", "A", "X"]' in out


def test_validation_failure_exits_one(capsys):
    code, out, err = invoke(
        capsys, "chain-predict", "m0", "--doc", doc_path("chain-offzero")
    )
    assert code == 1 and err == ""
    result = json.loads(out)["result"]
    assert result["error"]["type"] == "NonzeroAtZeroError"


def test_missing_file_exits_two(capsys):
    code, out, err = invoke(capsys, "alg", "--doc", "/no/such/file.json")
    assert code == 2 and out == ""
    assert "cannot read" in err


def test_bad_document_exits_two(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"version": "other/9"}')
    code, out, err = invoke(capsys, "alg", "--doc", str(bad))
    assert code == 2 and "version" in err


def test_proptest_command(capsys):
    code, out, _ = invoke(capsys, "proptest", "lattice", "--seed", "1", "--cases", "40")
    assert code == 0
    payload = json.loads(out)
    assert payload["seed"] == 1 and payload["cases"] == 40
    assert payload["result"]["all_passed"] is True
    assert all(p["passed"] for p in payload["result"]["properties"])


def test_run_rejects_unknown_command():
    doc = parse_document((FIXTURES / "triangular.json").read_text())
    with pytest.raises(UnknownCommandError):
        run("frobnicate", doc)


def test_run_suite_rejects_unknown_suite():
    with pytest.raises(UnknownSuiteError):
        run_suite("nonsense", 0, 1)


def test_proptest_reports_each_property():
    verdict = proptest("lattice", 1, 20)
    names = [p["name"] for p in verdict.result["properties"]]
    assert len(names) == len(set(names)) and len(names) >= 3
