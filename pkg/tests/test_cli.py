import json

import pytest

from hochbv import cli
from hochbv.catalog import a_lambda
from hochbv.cli import HYPOTHESIS_UNMET, ParseError, Report, fingerprint, main, parse_algebra_file, parse_algebra_text
from hochbv.exactfield import GF, Q

A2_QUIVER = {
    "kind": "quiver",
    "field": "Q",
    "vertices": ["1"],
    "arrows": [["X", "1", "1"], {"name": "Y", "source": "1", "target": "1"}],
    "relations": [{"X*X": 1}, {"Y*Y": 1}, {"X*Y": 1, "Y*X": -2}],
    "nilpotency_bound": 3,
}

DUAL_NUMBERS = {
    "kind": "structure_constants",
    "field": "Q",
    "labels": ["1", "x"],
    "unit": {"1": 1},
    "products": [["1", "1", {"1": 1}], ["1", "x", {"x": 1}], ["x", "1", {"x": 1}], ["x", "x", {}]],
}


def write(tmp_path, doc, name="alg.json"):
    p = tmp_path / name
    p.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return str(p)


# -- parsing --

def test_quiver_file_matches_catalog(tmp_path):
    A = parse_algebra_file(write(tmp_path, A2_QUIVER))
    assert fingerprint(A) == fingerprint(a_lambda(Q, 2))


def test_structure_constants_file():
    A = parse_algebra_text(json.dumps(DUAL_NUMBERS))
    assert A.dim == 2
    x = A.index("x")
    assert A.basis_product(x, x) == {} and A.basis_product(x, A.index("1")) == {x: 1}


def test_field_override():
    A = parse_algebra_text(json.dumps(DUAL_NUMBERS), GF(5))
    assert A.field == GF(5)


def test_malformed_json_location():
    with pytest.raises(ParseError) as exc:
        parse_algebra_text('{"kind": "quiver",\n "field": }')
    assert exc.value.where.startswith("line 2 column")


def test_non_composable_relation_named():
    doc = dict(A2_QUIVER, vertices=["1", "2"], arrows=[["X", "1", "2"], ["Y", "1", "2"]],
               relations=[{"X*Y": 1}])
    with pytest.raises(ParseError) as exc:
        parse_algebra_text(json.dumps(doc))
    assert exc.value.where == "$.relations[0]"
    assert "X*Y" in str(exc.value)


@pytest.mark.parametrize("mutate,where", [
    (lambda d: d.update(colour="red"), "$"),
    (lambda d: d.update(kind="matrix"), "$.kind"),
    (lambda d: d.pop("unit"), "$"),
    (lambda d: d["products"].append(["x", "y", {}]), "$.products[4][1]"),
    (lambda d: d["products"].append(["x", "x", {}]), "$.products[4]"),
    (lambda d: d["products"][1].__setitem__(2, {"x": 1.5}), "$.products[1][2].x"),
])
def test_structure_constant_errors(mutate, where):
    doc = json.loads(json.dumps(DUAL_NUMBERS))
    mutate(doc)
    with pytest.raises(ParseError) as exc:
        parse_algebra_text(json.dumps(doc))
    assert exc.value.where == where


def test_file_errors_carry_path(tmp_path):
    path = write(tmp_path, dict(A2_QUIVER, extra=1))
    with pytest.raises(ParseError) as exc:
        parse_algebra_file(path)
    assert path in str(exc.value)


# -- exit codes --

def test_exit_ok(capsys):
    assert main(["--builtin", "a_lambda", "--param", "lam=2", "--max-degree", "3"]) == 0
    out = capsys.readouterr().out
    assert "[pass] bv" in out


def test_exit_usage_errors(tmp_path, capsys):
    assert main([]) == 2
    assert main(["--builtin", "a_lambda", "--param", "lam"]) == 2
    assert main(["--builtin", "a_lambda", "--checks", "bogus"]) == 2
    assert main(["--input", write(tmp_path, "{nope")]) == 2
    assert "parse error" in capsys.readouterr().err


def test_exit_failure(monkeypatch, capsys):
    def failing(*args, **kwargs):
        return Report({"algebra": "x", "dim": 1, "field": "Q", "max_degree": 1, "fingerprint": "0" * 64},
                      checks={"bv": "fail"})
    monkeypatch.setattr(cli, "run_pipeline", failing)
    assert main(["--builtin", "truncated_polynomial"]) == 1


def test_hypothesis_unmet_and_strict(capsys):
    argv = ["--builtin", "nakayama_cycle_algebra", "--field", "GF(2)", "--max-degree", "3"]
    assert main(argv) == 0
    assert HYPOTHESIS_UNMET in capsys.readouterr().out
    assert main(argv + ["--strict"]) == 3


def test_omega_gf3_not_semisimple(capsys):
    assert main(["--builtin", "omega", "--param", "n=1", "--field", "GF(3)", "--max-degree", "3",
                 "--output", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["hypothesis_unmet"] is True
    assert doc["checks"]["bv"] == "skipped"


def test_json_deterministic(tmp_path, capsys):
    path = write(tmp_path, A2_QUIVER)
    outs = []
    for _ in range(2):
        assert main(["--input", path, "--max-degree", "3", "--output", "json"]) == 0
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]
    doc = json.loads(outs[0])
    assert doc["meta"]["fingerprint"] == fingerprint(a_lambda(Q, 2))
    assert all(v in ("pass", "skipped", "not checked") for v in doc["checks"].values())


def test_check_selection(capsys):
    assert main(["--builtin", "truncated_polynomial", "--checks", "complexes", "--output", "json",
                 "--max-degree", "3"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["checks"]["complexes"] == "pass"
    assert doc["checks"].get("bv") in (None, "skipped")


def test_descent_extends_field(capsys):
    assert main(["--builtin", "a_lambda_descent", "--field", "GF(3)", "--max-degree", "3", "--output", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["sections"]["nakayama"]["status"] == "extended"
    assert doc["checks"]["bv"] == "pass"
