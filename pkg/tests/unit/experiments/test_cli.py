"""
Unit tests for the command line entry point.
"""

import os

from fraclab.experiments import EXPERIMENTS
from fraclab.experiments.cli import EXIT_CONFIG, EXIT_OK, main


def test_list(capsys):
    assert main(["list"]) == EXIT_OK
    out = capsys.readouterr().out
    for name in EXPERIMENTS:
        assert name in out


def test_invalid_config_exit_code(fixtures_path, capsys):
    assert main(["run", os.path.join(fixtures_path, "invalid_order.json")]) == EXIT_CONFIG
    assert "s must lie in (0,1)" in capsys.readouterr().err


def test_run_with_overrides(fixtures_path, tmp_path, capsys):
    code = main(["run", os.path.join(fixtures_path, "torsion_small.json"), "--out", str(tmp_path),
                 "--seed", "3", "--debug"])
    assert code == EXIT_OK
    assert (tmp_path / "manifest.json").exists()
    assert "PASS" in capsys.readouterr().out
