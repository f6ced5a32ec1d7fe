"""
Configuration and fixtures for the unit tests.

Assembly is the expensive step, so meshes and forms are session scoped.
"""

import os.path

import pytest

from fraclab.geometry import Domain, GridFunction, build_mesh
from fraclab.operator import KernelSpec, assemble_form, solve_linear


def _form(domain, resolution):
    return assemble_form(build_mesh(domain, resolution), KernelSpec.for_domain(domain))


@pytest.fixture(scope="session")
def half_interval():
    """(−1, 1) with s = 1/2."""
    return Domain.interval(-1.0, 1.0, 0.5)


@pytest.fixture(scope="session")
def form32(half_interval):
    return _form(half_interval, 32)


@pytest.fixture(scope="session")
def form64(half_interval):
    return _form(half_interval, 64)


@pytest.fixture(scope="session")
def torsion32(form32):
    """Discrete solution of (−Δ)^{1/2} u = 1 on 32 segments."""
    return solve_linear(form32, GridFunction.constant(form32.mesh, 1.0))


@pytest.fixture(scope="session")
def torsion64(form64):
    return solve_linear(form64, GridFunction.constant(form64.mesh, 1.0))


@pytest.fixture(scope="session")
def disk_form():
    """Unit disk, s = 1/2, coarse."""
    return _form(Domain.disk((0.0, 0.0), 1.0, 0.5), 4)


@pytest.fixture
def fixtures_path():
    """Get the path to the fixtures directory."""
    here = os.path.dirname(os.path.abspath(__file__))
    return os.path.join(os.path.dirname(here), "fixtures")
