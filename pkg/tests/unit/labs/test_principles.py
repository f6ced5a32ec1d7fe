"""
Unit tests for the maximum principle, barrier, Hopf and regularity checks.
"""

import unittest

import numpy as np
import pytest

from fraclab.error import DomainError, InvalidCertificateError
from fraclab.geometry import Domain, GridFunction
from fraclab.labs import barrier, hopf_quotient, local_bound_check, regularity_ratio, smp_check, wmp_check
from fraclab.operator import KernelSpec, load_vector, solve_linear, torsion_interpolant
from fraclab.variational import check_order_residuals, constant, from_grid


def test_wmp_on_torsion(form32, torsion32):
    cert = check_order_residuals(form32, constant(), torsion32, "super")
    verdict = wmp_check(form32, torsion32, cert)
    assert verdict.passed
    assert verdict.margin > 0
    assert smp_check(torsion32).passed


def test_wmp_random_nonnegative_data(form32):
    rng = np.random.default_rng(11)
    mesh = form32.mesh
    for _ in range(10):
        g = GridFunction(mesh, rng.uniform(0, 1, mesh.n_nodes))
        u = solve_linear(form32, g)
        cert = check_order_residuals(form32, from_grid(g), u, "super")
        assert wmp_check(form32, u, cert).passed


def test_wmp_rejects_foreign_certificate(form32, torsion32):
    cert = check_order_residuals(form32, constant(), torsion32, "super")
    with pytest.raises(InvalidCertificateError):
        wmp_check(form32, torsion32 * 2.0, cert)
    sub = check_order_residuals(form32, constant(), GridFunction.zeros(form32.mesh), "sub")
    with pytest.raises(InvalidCertificateError):
        wmp_check(form32, GridFunction.zeros(form32.mesh), sub)


def test_wmp_rejects_negative_data(form32):
    u = solve_linear(form32, GridFunction.constant(form32.mesh, -1.0))
    cert = check_order_residuals(form32, constant(-1.0), u, "super")
    with pytest.raises(InvalidCertificateError):
        wmp_check(form32, u, cert)


def test_smp_rejects_zero(form32):
    with pytest.raises(ValueError):
        smp_check(GridFunction.zeros(form32.mesh))


def test_hopf_quotient_of_torsion(torsion64):
    q = hopf_quotient(torsion64)
    exact = hopf_quotient(torsion_interpolant(torsion64.mesh))
    assert q.value > 0
    assert abs(q.value - exact.value) / exact.value < 0.1


def test_hopf_rejects_sign_change(torsion32):
    with pytest.raises(InvalidCertificateError):
        hopf_quotient(-torsion32)


def test_hopf_quotient_with_explicit_domain(torsion32):
    default = hopf_quotient(torsion32)
    assert hopf_quotient(torsion32, torsion32.mesh.domain) == default
    d = torsion32.mesh.domain
    wider = Domain.interval(d.a - 1.0, d.b + 1.0, d.s)
    assert 0 < hopf_quotient(torsion32, wider).value < default.value


def test_hopf_rejects_domain_missing_nodes(torsion32):
    d = torsion32.mesh.domain
    narrower = Domain.interval(d.a / 2, d.b / 2, d.s)
    with pytest.raises(DomainError):
        hopf_quotient(torsion32, narrower)


def test_regularity_ratio_of_torsion(torsion32):
    f = GridFunction.constant(torsion32.mesh, 1.0)
    assert 0 < regularity_ratio(torsion32, f) < 10
    with pytest.raises(ValueError):
        regularity_ratio(torsion32, GridFunction.zeros(torsion32.mesh))


class TestBarrier(unittest.TestCase):

    def test_positive_constant(self):
        result = barrier(1.0, 2.0, KernelSpec(1, 0.5), 32)
        self.assertGreater(result.c, 0)
        self.assertTrue(np.all(result.phi.values >= -1e-12))

    def test_stable_under_refinement(self):
        coarse = barrier(1.0, 2.0, KernelSpec(1, 0.25), 32).c
        fine = barrier(1.0, 2.0, KernelSpec(1, 0.25), 64).c
        self.assertTrue(0.5 <= fine / coarse <= 2.0)

    def test_invalid_radii(self):
        with self.assertRaises(ValueError):
            barrier(2.0, 1.0, KernelSpec(1, 0.5), 16)
        with self.assertRaises(ValueError):
            barrier(0.5, 1.0, KernelSpec(2, 0.5), 16)


def test_local_bound_is_finite(torsion64):
    result = local_bound_check(torsion64, [0.0], 0.5, 0.5)
    assert result.passed
    assert result.tail > 0


def test_local_bound_ball_must_fit(torsion32):
    with pytest.raises(DomainError):
        local_bound_check(torsion32, [0.8], 0.5, 0.5)
