"""
Unit tests for the Talenti family.
"""

import unittest

import numpy as np
import pytest

from fraclab.geometry import Domain
from fraclab.labs import TalentiFamily, critical_blowup_demo, talenti_critical_norm, talenti_eval, talenti_fit_gamma


class TestTalentiFamily(unittest.TestCase):

    def test_value_at_center_is_sup(self):
        family = TalentiFamily(0.5, (0.0,), 1, 0.25)
        self.assertAlmostEqual(float(family(np.array([[0.0]]))[0]), family.sup)
        self.assertAlmostEqual(family.sup, 0.5 ** -0.25)

    def test_one_dimensional_shapes(self):
        self.assertEqual(np.shape(talenti_eval(1.0, 0.0, 1, 0.25, np.zeros(3))), (3,))
        self.assertEqual(np.shape(talenti_eval(1.0, 0.0, 1, 0.25, np.zeros((3, 1)))), (3,))
        self.assertIsInstance(talenti_eval(1.0, 0.0, 1, 0.25, 0.0), float)

    def test_requires_n_above_2s(self):
        with self.assertRaises(ValueError):
            TalentiFamily(1.0, (0.0,), 1, 0.5)
        with self.assertRaises(ValueError):
            talenti_eval(0.0, 0.0, 1, 0.25, 0.0)


@pytest.mark.parametrize("eps", [0.5, 1.0, 2.0])
def test_whole_space_norm_is_scale_invariant(eps):
    # ‖𝒯‖_{2*}^{2*} = π in one dimension
    assert abs(talenti_critical_norm(eps, 1, 0.25) - np.pi ** 0.25) < 1e-6


def test_plane_norm():
    assert abs(talenti_critical_norm(1.0, 2, 0.5) - np.pi ** (1.0 / 4.0)) < 1e-6


def test_domain_norm_below_whole_space():
    domain = Domain.interval(-1.0, 1.0, 0.25)
    assert talenti_critical_norm(1.0, 1, 0.25, domain) < talenti_critical_norm(1.0, 1, 0.25)


def test_disk_norm_matches_closed_form():
    # centred disk of radius R: π R²/(ε² + R²)
    domain = Domain.disk((0.0, 0.0), 1.0, 0.5)
    expected = (np.pi / 2.0) ** 0.25
    assert abs(talenti_critical_norm(1.0, 2, 0.5, domain) - expected) < 1e-10


def test_blowup_ratio_grows():
    rows = critical_blowup_demo(Domain.interval(-1.0, 1.0, 0.25), eps_values=(1.0, 0.5, 0.25, 0.125))
    ratios = [r.ratio for r in rows]
    assert all(b > a for a, b in zip(ratios, ratios[1:]))
    with pytest.raises(ValueError):
        critical_blowup_demo(Domain.interval(-1.0, 1.0, 0.25), z=[3.0])


def test_gamma_fit_is_constant():
    fit = talenti_fit_gamma(1.0, [0.0], 1, 0.25)
    assert fit.spread < 0.01
    assert fit.gamma > 0
    assert len(fit.probes) == 5
