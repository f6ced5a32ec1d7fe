"""
Unit tests for the experiment runner on small configurations.
"""

import hashlib
import json
import os

import pytest

from fraclab.error import GammaFitError
from fraclab.experiments import (
    EXPERIMENTS, STUDIES, StudyResult, Table, load_config, parse_config, render_csv, run_experiment,
)


def _read_manifest(out):
    with open(os.path.join(out, "manifest.json"), encoding="utf-8") as fh:
        return json.load(fh)


def test_every_experiment_has_a_study():
    assert set(STUDIES) == set(EXPERIMENTS)


def test_csv_uses_crlf_and_quoting():
    text = render_csv(Table(["name", "value"], [{"name": "a,b", "value": 0.1}, {"name": "c", "value": True}]))
    assert text == 'name,value\r\n"a,b",0.1\r\nc,true\r\n'


def test_torsion_run_writes_artifacts(fixtures_path, tmp_path):
    manifest = run_experiment(load_config(os.path.join(fixtures_path, "torsion_small.json")), tmp_path)
    assert manifest.passed
    data = _read_manifest(tmp_path)
    assert data["schema"] == 1
    assert data["passed"] is True
    assert data["config"]["experiment"] == "torsion-convergence"
    names = {a["path"] for a in data["artifacts"]}
    assert {"torsion.csv", "torsion_errors.svg", "summary.json"} <= names
    for artifact in data["artifacts"]:
        with open(tmp_path / artifact["path"], "rb") as fh:
            assert hashlib.sha256(fh.read()).hexdigest() == artifact["sha256"]
    assert [s["name"] for s in data["stages"]] == ["study", "write"]


def test_reruns_are_deterministic(fixtures_path, tmp_path):
    config = load_config(os.path.join(fixtures_path, "wmp_small.json"))
    first = run_experiment(config, tmp_path / "a")
    second = run_experiment(config, tmp_path / "b")
    # stage timings make the manifest itself differ between runs
    hashes = [[a for a in m.artifacts if a["path"] != "manifest.json"] for m in (first, second)]
    assert hashes[0] == hashes[1]
    assert first.passed


def test_moser_fixed_point_ladder(fixtures_path, tmp_path):
    manifest = run_experiment(load_config(os.path.join(fixtures_path, "moser_fixed_point.json")), tmp_path)
    assert manifest.passed
    lines = (tmp_path / "ladder.csv").read_bytes().decode("utf-8").split("\r\n")
    assert lines[0] == "n,exponent"
    assert lines[-1] == "" and len(lines) > 2
    assert not any("\n" in line for line in lines)
    assert all(line.endswith(",1.0") for line in lines[1:] if line)


def test_wmp_summary(fixtures_path, tmp_path):
    run_experiment(load_config(os.path.join(fixtures_path, "wmp_small.json")), tmp_path)
    summary = json.loads((tmp_path / "summary.json").read_text(encoding="utf-8"))
    assert summary["summary"]["16"]["violations"] == 0
    assert summary["summary"]["16"]["instances"] == 12


def test_subsuper_demo(tmp_path):
    manifest = run_experiment(parse_config({"experiment": "subsuper-demo", "resolutions": [16]}), tmp_path)
    assert manifest.passed, [c for c in manifest.checks if not c.passed]


def test_sign_minimizers_study(fixtures_path, tmp_path):
    manifest = run_experiment(load_config(os.path.join(fixtures_path, "sign_arctan.json")), tmp_path)
    assert manifest.passed, [c for c in manifest.checks if not c.passed]


def test_tolerances_drive_checks_and_are_recorded(tmp_path):
    base = {"experiment": "regularity-sweep", "resolutions": [16, 32], "params": {"instances": 3}}
    manifest = run_experiment(parse_config(dict(base, tolerances={"regularity_spread": 0.0})), tmp_path)
    assert not manifest.passed
    assert [c.name for c in manifest.failed_checks] == ["ratio-bounded"]
    assert _read_manifest(tmp_path)["config"]["tolerances"]["regularity_spread"] == 0.0


def test_failed_check_marks_run(monkeypatch, tmp_path):
    def failing(config):
        result = StudyResult()
        result.check("always-false", False, "forced")
        return result

    monkeypatch.setitem(STUDIES, "barrier-check", failing)
    manifest = run_experiment(parse_config({"experiment": "barrier-check"}), tmp_path)
    assert not manifest.passed
    assert [c.name for c in manifest.failed_checks] == ["always-false"]
    assert _read_manifest(tmp_path)["passed"] is False


def test_study_error_names_experiment(monkeypatch, tmp_path):
    def broken(config):
        raise GammaFitError("ratios differ", [1.0, 2.0])

    monkeypatch.setitem(STUDIES, "talenti-blowup", broken)
    with pytest.raises(GammaFitError, match="^talenti-blowup: ratios differ"):
        run_experiment(parse_config({"experiment": "talenti-blowup"}), tmp_path)
