"""
Unit tests for the Moser-iteration bookkeeping.
"""

import unittest
from fractions import Fraction

import numpy as np
import pytest

from fraclab.geometry import GridFunction
from fraclab.labs import (
    elementary_inequality_gap, inequality_fuzz, moser_ladder, random_ladder_check, sup_bound_cascade,
    tail_smallness_level,
)


class TestElementaryInequality(unittest.TestCase):

    def test_equality_at_r_two(self):
        a = np.array([-3.0, 0.5, 7.0])
        b = np.array([2.0, -0.25, 7.5])
        np.testing.assert_allclose(elementary_inequality_gap(a, b, 2.0, 1.0), 0.0, atol=1e-12)

    def test_nonnegative_on_samples(self):
        fuzz = inequality_fuzz(count=20_000, seed=3)
        self.assertTrue(fuzz.passed)
        self.assertEqual(fuzz.count, 20_000)

    def test_argument_ranges(self):
        with self.assertRaises(ValueError):
            elementary_inequality_gap(1.0, 2.0, 1.5, 1.0)
        with self.assertRaises(ValueError):
            elementary_inequality_gap(1.0, 2.0, 3.0, 0.0)


class TestMoserLadder(unittest.TestCase):

    def test_fixed_point_ladder_is_constant(self):
        ladder = moser_ladder(3, 3, Fraction(3, 4), 1)
        self.assertEqual(ladder.mu0, 1)
        self.assertEqual(ladder.gamma_sq, 2)
        self.assertEqual(set(ladder.exact), {Fraction(1)})
        self.assertFalse(ladder.diverges)

    def test_subcritical_start_diverges(self):
        ladder = moser_ladder(3, 3, Fraction(3, 4), "subcritical", n_max=5)
        # 2* = 4, so r_0 = 3 and r_{n+1} = 2 r_n − 1
        self.assertEqual(ladder.exact, [3, 5, 9, 17, 33, 65])
        self.assertTrue(ladder.diverges)

    def test_below_fixed_point_decreases(self):
        ladder = moser_ladder(3, 3, "3/4", "1/2", n_max=3)
        self.assertEqual(ladder.exact, [Fraction(1, 2), 0, -1, -3])

    def test_quadratic_growth_is_trivially_divergent(self):
        ladder = moser_ladder(2, 3, "3/4", 0, n_max=4)
        self.assertEqual(ladder.mu0, 0)
        self.assertEqual(set(ladder.exact), {Fraction(0)})
        self.assertTrue(ladder.diverges)
        self.assertTrue(ladder.shape_consistent)
        self.assertTrue(moser_ladder("3/2", 3, "3/4", 0, n_max=4).diverges)

    def test_shape_verdict(self):
        for mu in ("1/2", 1, "subcritical"):
            self.assertTrue(moser_ladder(3, 3, "3/4", mu, n_max=4).shape_consistent)

    def test_critical_start(self):
        ladder = moser_ladder(3, 3, 0.75, "critical", n_max=1)
        self.assertEqual(ladder.start, 5)

    def test_invalid_arguments(self):
        with self.assertRaises(ValueError):
            moser_ladder(3, 1, 0.5)
        with self.assertRaises(ValueError):
            moser_ladder(5, 3, 0.75)
        with self.assertRaises(ValueError):
            moser_ladder(3, 3, 0.75, "huge")

    def test_random_ladders(self):
        check = random_ladder_check(count=200, seed=5)
        self.assertTrue(check.passed, check.mismatches[:3])


def test_tail_smallness_level(torsion32):
    assert tail_smallness_level(torsion32, 3.0, 1e6) == 0.0
    level = tail_smallness_level(torsion32, 3.0, 1e-3)
    assert 0.0 < level <= float(np.max(torsion32.values))
    with pytest.raises(ValueError):
        tail_smallness_level(torsion32, 2.0, 1.0)


def test_cascade_bounds_sup(torsion32):
    # N = 2s: every exponent embeds, the cascade starts at max(q, 2)
    result = sup_bound_cascade(torsion32, 3.0)
    assert result.passed
    assert result.rungs[0][0] == 3.0
    assert result.rungs[-1][0] > 1e3
    ps = [p for p, _ in result.rungs]
    assert all(b > a for a, b in zip(ps, ps[1:]))


def test_cascade_subcritical_dimension(torsion32):
    # s = 1/4 starts the cascade at 2* = 4
    result = sup_bound_cascade(torsion32, 3.0, N=1, s=0.25)
    assert result.rungs[0][0] == 4.0
    assert result.passed


def test_cascade_of_zero(torsion32):
    result = sup_bound_cascade(GridFunction.zeros(torsion32.mesh), 3.0)
    assert result.bound == 0.0 and result.passed
