"""
Unit tests for fraclab.geometry.domain.
"""

import unittest

import numpy as np

from fraclab.error import DomainError
from fraclab.geometry import Domain, DomainKind, boundary_distance, critical_exponent, truncate


class TestDomain(unittest.TestCase):
    """Geometry constructors, distances and the scalar helpers."""

    def test_interval_properties(self):
        d = Domain.interval(-1, 1, 0.5)
        self.assertEqual(d.kind, DomainKind.INTERVAL)
        self.assertEqual(d.dim, 1)
        self.assertEqual(d.measure, 2.0)
        np.testing.assert_array_equal(d.midpoint, [0.0])

    def test_disk_properties(self):
        d = Domain.disk((1.0, 2.0), 0.5, 0.25)
        self.assertEqual(d.dim, 2)
        self.assertAlmostEqual(d.measure, np.pi / 4)
        self.assertEqual(d.diameter, 1.0)

    def test_invalid_geometry(self):
        with self.assertRaises(DomainError):
            Domain.interval(1, -1, 0.5)
        with self.assertRaises(DomainError):
            Domain.disk((0, 0), 0.0, 0.5)
        with self.assertRaises(DomainError):
            Domain.interval(-1, 1, 1.0)

    def test_boundary_distance(self):
        d = Domain.interval(-1, 1, 0.5)
        self.assertEqual(boundary_distance(d, 0.0), 1.0)
        self.assertEqual(boundary_distance(d, 0.75), 0.25)
        self.assertEqual(boundary_distance(d, 1.0), 0.0)
        with self.assertRaises(DomainError):
            boundary_distance(d, 1.5)

    def test_disk_distance(self):
        d = Domain.disk((0, 0), 1.0, 0.5)
        np.testing.assert_allclose(boundary_distance(d, [[0.0, 0.0], [0.6, 0.0]]), [1.0, 0.4])

    def test_with_order_keeps_geometry(self):
        d = Domain.disk((0, 0), 2.0, 0.5).with_order(0.25)
        self.assertEqual(d.radius, 2.0)
        self.assertEqual(d.s, 0.25)


def test_truncate():
    assert truncate(3.0, 2.0) == 2.0
    assert truncate(-3.0, 2.0) == -2.0
    np.testing.assert_array_equal(truncate(np.array([-1.0, 0.5]), 0.75), [-0.75, 0.5])


def test_truncate_rejects_nonpositive_level():
    with np.testing.assert_raises(ValueError):
        truncate(1.0, 0.0)


def test_critical_exponent():
    assert critical_exponent(3, 0.75) == 4.0
    assert critical_exponent(1, 0.25) == 4.0
    with np.testing.assert_raises(ValueError):
        critical_exponent(1, 0.5)
