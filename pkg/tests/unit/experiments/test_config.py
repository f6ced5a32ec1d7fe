"""
Unit tests for experiment configuration parsing.
"""

import json
import os
import unittest

from fraclab.error import ConfigError
from fraclab.experiments import EXPERIMENTS, load_config, parse_config
from fraclab.geometry import DomainKind


class TestParseConfig(unittest.TestCase):

    def test_defaults(self):
        config = parse_config('{"experiment": "torsion-convergence"}')
        self.assertEqual(config.s, 0.5)
        self.assertEqual(config.resolutions, [32, 64, 128])
        self.assertEqual(config.seed, 0)
        self.assertEqual(config.nonlinearity.name, "constant")
        self.assertEqual(config.build_domain().kind, DomainKind.INTERVAL)

    def test_order_out_of_range(self):
        with self.assertRaises(ConfigError) as ctx:
            parse_config({"experiment": "torsion-convergence", "s": 1.5})
        self.assertIn("s must lie in (0,1)", str(ctx.exception))
        self.assertEqual(ctx.exception.paths, ["s"])

    def test_unknown_experiment_lists_names(self):
        with self.assertRaises(ConfigError) as ctx:
            parse_config({"experiment": "heat-flow"})
        for name in EXPERIMENTS:
            self.assertIn(name, str(ctx.exception))

    def test_errors_carry_json_paths(self):
        with self.assertRaises(ConfigError) as ctx:
            parse_config({"experiment": "wmp-sweep", "domain": {"kind": "disk", "radius": -1}, "seed": -2})
        self.assertIn("seed", ctx.exception.paths)
        self.assertTrue(any(p.startswith("domain") for p in ctx.exception.paths))

    def test_unknown_field_rejected(self):
        with self.assertRaises(ConfigError):
            parse_config({"experiment": "wmp-sweep", "instances": 3})

    def test_malformed_json(self):
        with self.assertRaises(ConfigError):
            parse_config("{experiment")
        with self.assertRaises(ConfigError):
            parse_config("[1, 2]")

    def test_overrides(self):
        config = parse_config('{"experiment": "hopf-study"}', seed=9, jobs=None)
        self.assertEqual(config.seed, 9)
        self.assertEqual(config.jobs, 1)

    def test_unknown_nonlinearity(self):
        with self.assertRaises(ConfigError):
            parse_config({"experiment": "subsuper-demo", "nonlinearity": {"name": "sine"}})

    def test_disk_domain(self):
        config = parse_config({"experiment": "eigen-spectrum", "domain": {"kind": "disk", "radius": 2.0}})
        self.assertEqual(config.build_domain().dim, 2)

    def test_tolerance_defaults(self):
        config = parse_config({"experiment": "torsion-convergence"})
        self.assertEqual(config.tolerances.center_rel, 0.02)
        self.assertEqual(config.tolerances.barrier_ratio, (0.5, 2.0))
        self.assertEqual(config.model_dump(mode="json")["tolerances"]["energy_identity"], 1e-8)

    def test_tolerance_override(self):
        config = parse_config({"experiment": "hopf-study", "tolerances": {"hopf_oracle": 0.1}})
        self.assertEqual(config.tolerances.hopf_oracle, 0.1)
        self.assertEqual(config.tolerances.hopf_stability, 0.25)

    def test_tolerance_errors(self):
        with self.assertRaises(ConfigError) as ctx:
            parse_config({"experiment": "hopf-study", "tolerances": {"hopf": 0.1}})
        self.assertEqual(ctx.exception.paths, ["tolerances.hopf"])
        with self.assertRaises(ConfigError):
            parse_config({"experiment": "barrier-check", "tolerances": {"barrier_ratio": [2.0, 0.5]}})
        with self.assertRaises(ConfigError):
            parse_config({"experiment": "wmp-sweep", "tolerances": {"wmp_violation": -1.0}})


def test_load_fixture(fixtures_path):
    config = load_config(os.path.join(fixtures_path, "sign_arctan.json"))
    assert config.nonlinearity.build().name == "arctan(3)"


def test_load_missing_file(tmp_path):
    try:
        load_config(tmp_path / "absent.json")
    except ConfigError as exc:
        assert "cannot read" in str(exc)
    else:
        raise AssertionError("expected ConfigError")


def test_config_echo_is_json(fixtures_path):
    config = load_config(os.path.join(fixtures_path, "moser_fixed_point.json"))
    echoed = json.loads(json.dumps(config.model_dump(mode="json")))
    assert echoed["params"]["s"] == "3/4"
