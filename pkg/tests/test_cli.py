"""Model-file parsing, pipeline dispatch, report shape, and exit codes."""

import json
from pathlib import Path

import pytest

from bimodconn import cli
from bimodconn.model import ModelError, parse_model
from bimodconn.report import Report, Verdict, failed, passed

MODELS = Path(__file__).resolve().parents[1] / "models"


def flat_doc() -> dict:
    return json.loads((MODELS / "a2_flat.model").read_text())


def write_doc(tmp_path: Path, doc: dict) -> str:
    p = tmp_path / "model.json"
    p.write_text(json.dumps(doc))
    return str(p)


def test_parse_shipped_flat_model():
    model = parse_model(str(MODELS / "a2_flat.model"))
    assert model.name == "a2-flat"
    assert list(model.connections) == ["nabla"]
    assert all(v.ok for v in model.axiom_verdicts)
    assert model.calculus.dims() == [2, 2, 2, 2]


def test_parse_truncation_override():
    model = parse_model(str(MODELS / "a2_flat.model"), truncation=2)
    assert model.truncation == 2
    assert model.calculus.dims() == [2, 2, 2]


def test_parse_rejects_bad_json(tmp_path):
    p = tmp_path / "broken.json"
    p.write_text("{not json")
    with pytest.raises(ModelError) as err:
        parse_model(str(p))
    assert err.value.path == "<file>"


def test_parse_rejects_zero_denominator(tmp_path):
    doc = flat_doc()
    doc["algebra"]["unit"][0] = "1/0"
    with pytest.raises(ModelError) as err:
        parse_model(write_doc(tmp_path, doc))
    assert "unit" in err.value.path


def test_parse_rejects_non_associative_algebra(tmp_path):
    doc = flat_doc()
    # e1·e1 = 2·e1 with unit e1 violates the unit axiom
    doc["algebra"] = {"dim": 1, "structure": [[["2"]]], "unit": ["1"]}
    doc["modules"] = {"M": {"left": [[["1"]]], "right": [[["1"]]]}}
    doc["connections"] = {"nabla": {"module": "M", "nabla": [["0"]]}}
    doc.pop("tensor", None)
    with pytest.raises(ModelError) as err:
        parse_model(write_doc(tmp_path, doc))
    assert err.value.verdict is not None
    assert err.value.verdict.status == "fail"


def test_parse_rejects_unknown_schema(tmp_path):
    doc = flat_doc()
    doc["schema"] = 99
    with pytest.raises(ModelError) as err:
        parse_model(write_doc(tmp_path, doc))
    assert err.value.path == "schema"


def test_run_check_reports_axioms_only():
    model = parse_model(str(MODELS / "a2_flat.model"))
    report = cli.run("check", model)
    ids = [v.check_id for v in report.records]
    assert ids[0] == "scope"
    assert "check-algebra" in ids
    assert report.summary == "pass"


def test_run_sigma_emits_matrix():
    model = parse_model(str(MODELS / "a2_flat.model"))
    report = cli.run("sigma", model)
    ids = {v.check_id: v for v in report.records}
    assert ids["sigma-exists"].ok
    assert "sigma-matrix" in ids
    assert report.summary == "pass"


def test_run_rejects_unknown_command():
    model = parse_model(str(MODELS / "a2_flat.model"))
    with pytest.raises(ValueError):
        cli.run("frobnicate", model)


def test_run_rejects_unknown_connection():
    model = parse_model(str(MODELS / "a2_flat.model"))
    with pytest.raises(ModelError):
        cli.run("check", model, connection="missing")


def test_report_json_round_trip():
    model = parse_model(str(MODELS / "a2_flat.model"))
    report = cli.run("check", model)
    doc = json.loads(report.to_json())
    assert doc["summary"] == "pass"
    assert all("paper_anchor" in rec for rec in doc["records"])


def test_summary_fail_drives_exit_code():
    report = Report()
    report.append(passed("ok-check", "anchor-a"))
    assert report.summary == "pass"
    report.append(failed("bad-check", "anchor-b", {"why": "witness"}))
    assert report.summary == "fail"
    absent = Report([Verdict("gone", "anchor-c", "absent")])
    assert absent.summary == "pass"


def test_main_exit_zero_and_json(tmp_path, capsys):
    out = tmp_path / "report.json"
    code = cli.main(["check", "--model", str(MODELS / "a2_flat.model"),
                     "--json", str(out)])
    assert code == 0
    assert json.loads(out.read_text())["summary"] == "pass"
    assert "check-algebra" in capsys.readouterr().out


def test_main_exit_two_on_missing_file(tmp_path, capsys):
    code = cli.main(["check", "--model", str(tmp_path / "nope.json")])
    assert code == 2
    assert "model error" in capsys.readouterr().err


def test_main_exit_one_on_failing_identity(capsys):
    # the gauge-potential fixture has a genuinely non-left-linear curvature
    code = cli.main(["curvature", "--model", str(MODELS / "m2_grass.model")])
    assert code == 1
    out = capsys.readouterr().out
    assert "curvature-left-linear" in out
    assert "FAIL" in out
