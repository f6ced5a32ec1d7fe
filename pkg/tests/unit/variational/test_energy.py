"""
Unit tests for the energy functional.
"""

import numpy as np
import pytest

from fraclab.error import NonFiniteEnergyError, NotInWeightedSpaceError
from fraclab.geometry import GridFunction
from fraclab.variational import EnergyFunctional, constant, energy, energy_gradient, exponential, linear, power


def test_energy_of_zero(form32):
    E = EnergyFunctional(form32, constant())
    assert energy(E, GridFunction.zeros(form32.mesh)) == 0.0


def test_torsion_minimizes_and_has_zero_gradient(form32, torsion32):
    E = EnergyFunctional(form32, constant())
    assert np.max(np.abs(energy_gradient(E, torsion32).values)) < 1e-10
    # Φ(u) = −½uᵀAu at the solution
    vec = torsion32.interior_values
    assert abs(energy(E, torsion32) + 0.5 * vec @ form32.A @ vec) < 1e-12


def test_gradient_matches_finite_differences(form32, torsion32):
    E = EnergyFunctional(form32, power(3.0))
    u = torsion32.interior_values
    v = np.random.default_rng(0).standard_normal(u.size)
    h = 1e-6
    fd = (E.value(u + h * v) - E.value(u - h * v)) / (2 * h)
    assert abs(fd - E.gradient(u) @ v) < 1e-6 * max(1.0, abs(fd))


def test_jacobian_of_linear(form32):
    E = EnergyFunctional(form32, linear(2.0))
    np.testing.assert_allclose(E.jacobian(np.zeros(form32.size)), form32.A - 2.0 * form32.M, atol=1e-12)


def test_rejects_nonzero_boundary(form32):
    E = EnergyFunctional(form32, constant())
    with pytest.raises(NotInWeightedSpaceError):
        energy(E, GridFunction.constant(form32.mesh, 1.0))


def test_non_finite_primitive_reports_location(form32):
    E = EnergyFunctional(form32, exponential())
    with pytest.raises(NonFiniteEnergyError) as info:
        E.value(np.full(form32.size, 1e4))
    assert info.value.location is not None


def test_critical_flag(form32):
    assert not EnergyFunctional(form32, power(3.0)).critical
