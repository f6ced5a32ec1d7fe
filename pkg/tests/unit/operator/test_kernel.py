"""
Unit tests for the kernel constants and the closed-form torsion profile.
"""

import unittest

import numpy as np

from fraclab.geometry import Domain
from fraclab.operator import KernelSpec, fractional_normalization, torsion_constant, torsion_profile


class TestKernelSpec(unittest.TestCase):

    def test_default_normalization(self):
        k = KernelSpec(1, 0.5)
        self.assertAlmostEqual(k.normalization, 1.0 / np.pi)
        self.assertAlmostEqual(fractional_normalization(1, 0.5), 1.0 / np.pi)

    def test_unit_normalization(self):
        self.assertEqual(KernelSpec.unit(2, 0.25).normalization, 1.0)

    def test_rejects_bad_parameters(self):
        with self.assertRaises(ValueError):
            KernelSpec(3, 0.5)
        with self.assertRaises(ValueError):
            KernelSpec(1, 1.0)
        with self.assertRaises(ValueError):
            KernelSpec(1, 0.5, normalization=-1.0)

    def test_kernel_value(self):
        k = KernelSpec(1, 0.5)
        self.assertAlmostEqual(float(k(np.array([2.0]), np.array([0.0]))[0]), 0.25)
        k2 = KernelSpec(2, 0.5)
        self.assertAlmostEqual(float(k2(np.array([3.0, 4.0]), np.zeros(2))), 5.0 ** -3)


class TestTorsion(unittest.TestCase):

    def test_half_laplacian_constant(self):
        self.assertAlmostEqual(torsion_constant(1, 0.5), 1.0)

    def test_profile_on_interval(self):
        profile = torsion_profile(Domain.interval(-1, 1, 0.5))
        np.testing.assert_allclose(profile(np.array([[0.0], [0.6], [1.0], [2.0]])), [1.0, 0.8, 0.0, 0.0])

    def test_profile_at_single_point_keeps_shape(self):
        profile = torsion_profile(Domain.interval(-1, 1, 0.5))
        value = profile(np.array([0.3]))
        self.assertEqual(np.shape(value), (1,))
        self.assertAlmostEqual(float(value[0]), np.sqrt(1.0 - 0.09))
        self.assertEqual(np.shape(profile(np.array([[0.3]]))), (1,))

    def test_profile_rescales_with_normalization(self):
        domain = Domain.interval(-1, 1, 0.5)
        unit = torsion_profile(domain, normalization=1.0)
        self.assertAlmostEqual(float(unit(np.array([[0.0]]))[0]), 1.0 / np.pi)
