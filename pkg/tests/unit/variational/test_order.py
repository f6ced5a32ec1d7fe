"""
Unit tests for order certificates and the sub-supersolution solve.
"""

import unittest

import numpy as np
import pytest

from fraclab.error import InvalidCertificateError, OrderViolationError
from fraclab.geometry import GridFunction
from fraclab.variational import (
    OrderedPair, SolveStatus, check_order_residuals, constant, linear, subsupersolution_solve,
    truncate_nonlinearity_order,
)


def test_certificates_of_torsion(form32, torsion32):
    nl = constant()
    zero = GridFunction.zeros(form32.mesh)
    assert check_order_residuals(form32, nl, zero, "sub").passed
    assert not check_order_residuals(form32, nl, zero, "super").passed
    cert = check_order_residuals(form32, nl, torsion32 * 2.0, "super")
    assert cert.passed and not cert.is_solution
    assert check_order_residuals(form32, nl, torsion32, "super").is_solution


def test_invalid_role(form32, torsion32):
    with pytest.raises(ValueError):
        check_order_residuals(form32, constant(), torsion32, "both")


def test_ordered_pair_rejects_crossing(torsion32):
    with pytest.raises(OrderViolationError):
        OrderedPair(torsion32, GridFunction.zeros(torsion32.mesh))


def test_sandwiched_solution(form32, torsion32):
    pair = OrderedPair(GridFunction.zeros(form32.mesh), torsion32 * 3.0)
    report = subsupersolution_solve(form32, constant(), pair)
    assert report.status is SolveStatus.CONVERGED
    assert report.method == "sub-supersolution"
    assert report.residual <= 1e-8
    lower_margin, upper_margin = report.sandwich_margins
    assert lower_margin > 0 and upper_margin > 0
    np.testing.assert_allclose(report.solution.values, torsion32.values, atol=1e-8)


def test_failed_certificate_rejected(form32, torsion32):
    pair = OrderedPair(GridFunction.zeros(form32.mesh), torsion32 * 0.5)
    with pytest.raises(InvalidCertificateError):
        subsupersolution_solve(form32, constant(), pair)


def test_requires_monotone_nonlinearity(form32, torsion32):
    pair = OrderedPair(GridFunction.zeros(form32.mesh), torsion32)
    with pytest.raises(ValueError):
        subsupersolution_solve(form32, linear(-1.0), pair)


class TestOrderTruncation(unittest.TestCase):

    def test_truncated_values_stay_between_bounds(self):
        from fraclab.geometry import Domain, build_mesh
        mesh = build_mesh(Domain.interval(-1.0, 1.0, 0.5), 8)
        lower = GridFunction.zeros(mesh)
        upper = GridFunction.from_callable(mesh, lambda x: 1 - x[:, 0] ** 2)
        nl = truncate_nonlinearity_order(linear(1.0), OrderedPair(lower, upper))
        x = np.array([[0.0], [0.0]])
        np.testing.assert_allclose(nl(x, np.array([5.0, -5.0])), [1.0, 0.0])
