"""
Acceptance-scale studies.

These run the full instance counts and resolutions and take minutes; pass
--run-integration-tests to enable them.
"""

import glob
import json
import os

import numpy as np
import pytest

from fraclab.experiments import load_config, parse_config, run_experiment
from fraclab.experiments.cli import EXIT_OK, main
from fraclab.labs import elementary_inequality_gap, inequality_fuzz

pytestmark = pytest.mark.integration

DEMO_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))), "demo")
DEMO_CONFIGS = sorted(glob.glob(os.path.join(DEMO_DIR, "*.json")))


def _summary(out):
    with open(os.path.join(out, "summary.json"), encoding="utf-8") as fh:
        return json.load(fh)


def _check(out, name):
    return next(c for c in _summary(out)["checks"] if c["name"] == name)


def test_inequality_fuzz_full():
    report = inequality_fuzz(100_000, seed=0)
    assert report.passed, report.witness
    rng = np.random.default_rng(1)
    a, b = rng.uniform(-10, 10, 10_000), rng.uniform(-10, 10, 10_000)
    gap = elementary_inequality_gap(a, b, 2.0, 1e6)
    assert np.max(np.abs(gap) / np.maximum(1.0, (a - b) ** 2)) <= 1e-12


def test_torsion_oracle(tmp_path):
    manifest = run_experiment(parse_config({"experiment": "torsion-convergence"}), tmp_path)
    assert manifest.passed, manifest.failed_checks
    assert _check(tmp_path, "center-oracle")["passed"]


def test_wmp_full_sweep(tmp_path):
    manifest = run_experiment(parse_config({"experiment": "wmp-sweep", "params": {"instances": 200}}), tmp_path)
    assert manifest.passed, manifest.failed_checks
    for level in _summary(tmp_path)["summary"].values():
        assert level["instances"] == 200
        assert level["violations"] == 0


def test_hopf_oracle(tmp_path):
    manifest = run_experiment(parse_config({"experiment": "hopf-study"}), tmp_path)
    assert manifest.passed, manifest.failed_checks
    assert _check(tmp_path, "quotient-oracle")["passed"]


def test_regularity_sweep_to_256(tmp_path):
    config = parse_config({"experiment": "regularity-sweep", "resolutions": [64, 128, 256], "jobs": 3})
    manifest = run_experiment(config, tmp_path)
    assert manifest.passed, manifest.failed_checks


def test_parallel_run_matches_serial(tmp_path):
    base = {"experiment": "regularity-sweep", "resolutions": [16, 32], "params": {"instances": 5}}
    serial = run_experiment(parse_config(base), tmp_path / "serial")
    parallel = run_experiment(parse_config(dict(base, jobs=2)), tmp_path / "parallel")
    for a, b in zip(serial.artifacts, parallel.artifacts):
        if a["path"] != "manifest.json":
            assert a == b


@pytest.mark.parametrize("path", DEMO_CONFIGS, ids=lambda p: os.path.basename(p)[:-5])
def test_demo_configuration(path, tmp_path):
    assert main(["run", path, "--out", str(tmp_path)]) == EXIT_OK
    with open(tmp_path / "manifest.json", encoding="utf-8") as fh:
        manifest = json.load(fh)
    assert manifest["passed"] is True
    assert manifest["config"] == load_config(path).model_dump(mode="json")


def test_demo_reruns_are_byte_identical(tmp_path):
    config = load_config(os.path.join(DEMO_DIR, "ball-minimizer-probe.json"))
    hashes = []
    for name in ("first", "second"):
        manifest = run_experiment(config, tmp_path / name)
        hashes.append([a for a in manifest.artifacts if a["path"] != "manifest.json"])
    assert hashes[0] == hashes[1]
