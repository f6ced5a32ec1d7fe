"""
Unit tests for mesh construction and export.
"""

import unittest

import numpy as np

from fraclab.error import MeshError
from fraclab.geometry import Domain, build_mesh, export_mesh, load_mesh


class TestIntervalMesh(unittest.TestCase):

    def setUp(self):
        self.domain = Domain.interval(-1.0, 1.0, 0.5)

    def test_node_count_and_boundary(self):
        mesh = build_mesh(self.domain, 8)
        self.assertEqual(mesh.n_nodes, 9)
        self.assertEqual(mesh.n_interior, 7)
        self.assertTrue(mesh.boundary[0] and mesh.boundary[-1])
        self.assertAlmostEqual(mesh.h, 0.25)
        self.assertAlmostEqual(mesh.measure, 2.0)

    def test_delta_vanishes_on_boundary(self):
        mesh = build_mesh(self.domain, 8)
        self.assertEqual(mesh.delta[0], 0.0)
        self.assertAlmostEqual(mesh.delta[4], 1.0)

    def test_resolution_too_small(self):
        with self.assertRaises(MeshError):
            build_mesh(self.domain, 1)

    def test_deterministic(self):
        self.assertTrue(build_mesh(self.domain, 16).same_as(build_mesh(self.domain, 16)))


class TestDiskMesh(unittest.TestCase):

    def setUp(self):
        self.domain = Domain.disk((0.0, 0.0), 1.0, 0.5)

    def test_mesh_size_and_quality(self):
        mesh = build_mesh(self.domain, 4)
        self.assertLessEqual(mesh.h, 0.25 * (1 + 1e-12))
        self.assertGreaterEqual(mesh.min_angle, 20.0)

    def test_area_close_to_disk(self):
        mesh = build_mesh(self.domain, 8)
        self.assertLess(abs(mesh.measure - np.pi), 0.05 * np.pi)
        self.assertTrue(np.all(mesh.element_measures > 0))

    def test_boundary_nodes_on_circle(self):
        mesh = build_mesh(self.domain, 4)
        radii = np.linalg.norm(mesh.nodes[mesh.boundary], axis=1)
        np.testing.assert_allclose(radii, 1.0, atol=1e-12)

    def test_export_roundtrip(self):
        mesh = build_mesh(self.domain, 4)
        self.assertTrue(load_mesh(export_mesh(mesh)).same_as(mesh))
