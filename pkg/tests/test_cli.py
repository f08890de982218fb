import json
from pathlib import Path

import jsonschema
import pytest

from quadra.cli import EXIT_FAIL, EXIT_INPUT, EXIT_OK, main
from quadra.rng import SEED_ENV

DOCS = Path(__file__).resolve().parent.parent / "docs"
SCHEMAS = {p.name.split(".")[0]: json.loads(p.read_text()) for p in (DOCS / "schemas").glob("*.schema.json")}
EXAMPLE_SCHEMA = {"lattices": "lattice", "complexes": "complex", "forms": "finite_form",
                  "doldkan": "doldkan", "picard": "picard"}
EXAMPLES = sorted((DOCS / "examples").glob("*/*.json"))


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), (json.loads(err) if err.strip() else None), out


def test_e8_report(capsys):
    code, rep, _, _ = run(capsys, "lattice", "builtin:E8")
    assert code == EXIT_OK
    r = rep["results"]
    assert (r["signature"], r["kappa"], r["det"]) == ("8", "-1", "1")
    assert r["discriminant"]["invariant_factors"] == []
    assert r["milgram"]["holds"] is True
    jsonschema.validate(rep, SCHEMAS["report"])


@pytest.mark.parametrize("source,lam,k,q", [("builtin:2", "auto", "7", "1/4"), ("builtin:<3>", "1", "2", "2/3")])
def test_rank_one_lattices(capsys, source, lam, k, q):
    code, rep, _, _ = run(capsys, "lattice", source, "--lambda", lam)
    assert code == EXIT_OK
    assert rep["results"]["gauss_sum"]["k"] == k
    assert rep["results"]["discriminant"]["q_values"] == [q]


def test_reports_are_byte_identical(capsys):
    outs = [run(capsys, "selftest", "--suites", "milgram,picard", "--milgram-trials", "5",
                "--picard-trials", "3", "--seed", "11")[3] for _ in range(2)]
    assert outs[0] == outs[1]
    assert "timing" not in outs[0]
    code, rep, _, _ = run(capsys, "--timing", "lattice", "builtin:A2")
    assert code == EXIT_OK and "timing" in rep


def test_seed_environment_override(capsys, monkeypatch):
    monkeypatch.setenv(SEED_ENV, "42")
    _, rep, _, _ = run(capsys, "selftest", "--suites", "golden", "--seed", "1")
    assert rep["results"]["seed"] == "42"
    monkeypatch.delenv(SEED_ENV)
    _, rep, _, _ = run(capsys, "selftest", "--suites", "golden", "--seed", "1")
    assert rep["results"]["seed"] == "1"


def test_minimal_selftest_passes(capsys):
    code, rep, _, _ = run(capsys, "selftest", "--milgram-trials", "1", "--seed", "0", "--suites", "milgram")
    assert code == EXIT_OK
    assert rep["results"]["passed"] is True


def test_cp2_kappa_table(capsys):
    code, rep, _, _ = run(capsys, "complex", "builtin:CP2", "--kappa", "--wu")
    assert code == EXIT_OK
    table = {row["lambda"]: row for row in rep["results"]["kappa"]["table"]}
    assert table["1g"]["kappa"] == "0" and table["3g"]["kappa"] == "1"
    assert table["-3g"]["kappa"] == "1"
    assert all(row["agree"] for row in table.values())
    assert rep["results"]["kappa"]["signature"] == "1"


def test_malformed_json_reports_position(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"gram": [[1, 2],\n  [2 4]]}')
    code, out, err, _ = run(capsys, "lattice", bad)
    assert code == EXIT_INPUT and out is None
    assert err["error"]["kind"] == "input"
    assert err["error"]["where"].endswith(":2:6")


@pytest.mark.parametrize("payload,fragment", [
    ({"gram": [[1, 2], [3, 4]]}, "symmetric"),
    ({"gram": [[3]], "lambda": [0]}, "characteristic"),
    ({"gram": [["x"]]}, "integer"),
    ({}, "gram"),
])
def test_invalid_lattice_inputs(capsys, tmp_path, payload, fragment):
    f = tmp_path / "l.json"
    f.write_text(json.dumps(payload))
    code, _, err, _ = run(capsys, "lattice", f)
    assert code == EXIT_INPUT
    assert fragment in err["error"]["message"]


def test_degenerate_form_is_input_error(capsys, tmp_path):
    f = tmp_path / "f.json"
    f.write_text(json.dumps({"orders": [2], "q": [["0"]]}))
    code, _, err, _ = run(capsys, "gauss", f)
    assert code == EXIT_INPUT


def test_unknown_builtin_and_missing_file(capsys):
    assert run(capsys, "complex", "builtin:K3")[0] == EXIT_INPUT
    assert run(capsys, "lattice", "/nonexistent/file.json")[0] == EXIT_INPUT


def test_series_and_dcohom_commands(capsys):
    code, rep, _, _ = run(capsys, "series", "--order", "6", "--checks", "--delta-order", "10", "--mod4-order", "8")
    assert code == EXIT_OK
    assert rep["results"]["spin_wu"][:7] == ["1", "0", "-1/2", "0", "-9/8", "0", "-17/16"]
    code, rep, _, _ = run(capsys, "dcohom", "builtin:RP2", "--q", "2", "--k", "2", "--witnesses", "--trials", "2",
                          "--seed", "3")
    assert code == EXIT_OK


@pytest.mark.parametrize("example", EXAMPLES, ids=lambda p: f"{p.parent.name}/{p.stem}")
def test_examples_validate_and_run(capsys, example):
    kind = example.parent.name
    data = json.loads(example.read_text())
    jsonschema.validate(data, SCHEMAS[EXAMPLE_SCHEMA[kind]])
    command = {"lattices": "lattice", "complexes": "complex", "forms": "gauss",
               "doldkan": "doldkan", "picard": "picard"}[kind]
    code, rep, err, _ = run(capsys, command, example)
    assert code == EXIT_OK, err
    jsonschema.validate(rep, SCHEMAS["report"])


def test_schema_rejects_bad_documents():
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate({"orders": [2]}, SCHEMAS["finite_form"])
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate({"vertices": 3, "facets": [[0, 1]], "orientation": 2}, SCHEMAS["complex"])


def test_failed_identity_exits_one_with_full_report(capsys, monkeypatch):
    import quadra.lattice

    monkeypatch.setattr(quadra.lattice, "milgram_check", lambda L, lam: False)
    code, rep, _, _ = run(capsys, "lattice", "builtin:A1")
    assert code == EXIT_FAIL
    assert rep["error"]["kind"] == "check"
    assert rep["results"]["gauss_sum"]["k"] == "7"
