"""
Unit tests for the assembled stiffness form and linear solves.
"""

import json
import unittest

import numpy as np

from fraclab.geometry import Domain, GridFunction, build_mesh, pos_neg_parts
from fraclab.operator import (
    KernelSpec, apply_form, assemble_form, load_vector, mass_product, seminorm, solve_dirichlet,
    solve_linear, torsion_profile,
)


def test_form_is_symmetric_positive_definite(form32):
    np.testing.assert_allclose(form32.A, form32.A.T)
    assert np.linalg.eigvalsh(form32.A).min() > 0
    assert form32.size == form32.mesh.n_interior


def test_disk_form_is_symmetric_positive_definite(disk_form):
    np.testing.assert_allclose(disk_form.A, disk_form.A.T)
    assert np.linalg.eigvalsh(disk_form.A).min() > 0


def test_off_diagonal_entries_negative(form32):
    off = form32.A[~np.eye(form32.size, dtype=bool)]
    assert off.size == form32.size * (form32.size - 1)
    assert off.max() < 0


def test_mass_matrix_matches_load_of_ones(form32):
    mesh = form32.mesh
    ones = np.ones(mesh.n_interior)
    assert abs(ones @ form32.M @ ones - float(np.sum(load_vector(form32, GridFunction.from_interior(mesh, ones))))) < 1e-12


def test_torsion_center_close_to_closed_form(torsion64):
    assert abs(float(torsion64.evaluate(np.array([[0.0]]))[0]) - 1.0) < 0.05


def test_torsion_error_decreases(torsion32, torsion64):
    errors = []
    for u in (torsion32, torsion64):
        exact = torsion_profile(u.mesh.domain)(u.mesh.nodes)
        errors.append(np.max(np.abs(u.values - exact)))
    assert errors[1] < errors[0]


def test_energy_identity(form32, torsion32):
    # uᵀAu = ∫u for the torsion function
    load = load_vector(form32, GridFunction.constant(form32.mesh, 1.0))
    assert abs(apply_form(form32, torsion32, torsion32) - float(load @ torsion32.interior_values)) < 1e-10


def test_negative_part_identity(form32):
    rng = np.random.default_rng(7)
    for _ in range(20):
        u = GridFunction.from_interior(form32.mesh, rng.standard_normal(form32.mesh.n_interior))
        _, minus = pos_neg_parts(u)
        assert apply_form(form32, u, minus) <= -seminorm(form32, minus) ** 2 + 1e-12


def test_mass_product_symmetric(form32):
    rng = np.random.default_rng(3)
    u = GridFunction.from_interior(form32.mesh, rng.standard_normal(form32.size))
    v = GridFunction.from_interior(form32.mesh, rng.standard_normal(form32.size))
    assert abs(mass_product(form32, u, v) - mass_product(form32, v, u)) < 1e-14


class TestAssemblyChecks(unittest.TestCase):

    def test_dimension_mismatch(self):
        mesh = build_mesh(Domain.interval(-1, 1, 0.5), 8)
        with self.assertRaises(ValueError):
            assemble_form(mesh, KernelSpec(2, 0.5))
        with self.assertRaises(ValueError):
            assemble_form(mesh, KernelSpec(1, 0.25))

    def test_normalization_scales_linearly(self):
        mesh = build_mesh(Domain.interval(-1, 1, 0.5), 8)
        standard = assemble_form(mesh, KernelSpec(1, 0.5))
        unit = assemble_form(mesh, KernelSpec.unit(1, 0.5))
        np.testing.assert_allclose(unit.A * (1.0 / np.pi), standard.A, rtol=1e-12)

    def test_exports(self):
        form = assemble_form(build_mesh(Domain.interval(-1, 1, 0.5), 4), KernelSpec(1, 0.5))
        data = json.loads(form.to_json())
        self.assertEqual(len(data["A"]), 3)
        lines = form.to_triplets().splitlines()
        self.assertEqual(len(lines), 9)


class TestDirichlet(unittest.TestCase):

    def test_fixed_values_are_kept(self):
        form = assemble_form(build_mesh(Domain.interval(-2, 2, 0.5), 16), KernelSpec(1, 0.5))
        mesh = form.mesh
        fixed = (np.abs(mesh.nodes[:, 0]) <= 1.0) & ~mesh.boundary
        phi = solve_dirichlet(form, fixed, np.where(fixed, 1.0, 0.0))
        np.testing.assert_allclose(phi.values[fixed], 1.0)
        free = ~fixed & ~mesh.boundary
        self.assertTrue(np.all(phi.values[free] > 0))
        self.assertTrue(np.all(phi.values[free] < 1))

    def test_without_fixed_nodes_matches_solve_linear(self):
        form = assemble_form(build_mesh(Domain.interval(-1, 1, 0.5), 16), KernelSpec(1, 0.5))
        mesh = form.mesh
        one = GridFunction.constant(mesh, 1.0)
        a = solve_dirichlet(form, np.zeros(mesh.n_nodes, dtype=bool), np.zeros(mesh.n_nodes), rhs=one)
        np.testing.assert_allclose(a.values, solve_linear(form, one).values, atol=1e-12)
