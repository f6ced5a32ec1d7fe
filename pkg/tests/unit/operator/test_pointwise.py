"""
Unit tests for the pointwise operator and the nonlocal tail.
"""

import numpy as np
import pytest

from fraclab.geometry import Domain
from fraclab.operator import KernelSpec, pointwise_flap, tail, torsion_profile


def test_flap_of_torsion_profile_is_one():
    profile = torsion_profile(Domain.interval(-1, 1, 0.5))
    estimate = pointwise_flap(profile, 0.0, KernelSpec(1, 0.5), breakpoints=[-1.0, 1.0])
    assert abs(estimate.value - 1.0) < 1e-3
    assert estimate.error >= 0.0


@pytest.mark.parametrize("x", [-0.5, 0.3])
def test_flap_of_torsion_profile_off_center(x):
    profile = torsion_profile(Domain.interval(-1, 1, 0.5))
    estimate = pointwise_flap(profile, x, KernelSpec(1, 0.5), breakpoints=[-1.0, 1.0])
    assert abs(estimate.value - 1.0) < 1e-3


def test_tail_of_constant():
    # r^{2s}·∫_{|x|>r} |x|^{−1−2s} dx = 1/s
    value = tail(lambda x: np.ones_like(np.asarray(x, dtype=float)), 0.0, 0.5, KernelSpec(1, 0.5))
    assert abs(value - 2.0) < 1e-8


def test_tail_rejects_nonpositive_radius():
    with pytest.raises(ValueError):
        tail(lambda x: x, 0.0, 0.0, KernelSpec(1, 0.5))


def test_grid_tail_matches_transform(torsion32):
    full = tail(torsion32, [0.0], 0.25, KernelSpec(1, 0.5))
    cut = tail(torsion32, [0.0], 0.25, KernelSpec(1, 0.5), transform=lambda v: np.maximum(v - 10.0, 0.0))
    assert full > 0.0
    assert cut == 0.0


def test_flap_accepts_scalar_valued_callable():
    profile = torsion_profile(Domain.interval(-1, 1, 0.5))

    def scalar_profile(points):
        values = profile(points)
        return float(values[0]) if np.size(values) == 1 else values

    estimate = pointwise_flap(scalar_profile, 0.3, KernelSpec(1, 0.5), breakpoints=[-1.0, 1.0])
    assert abs(estimate.value - 1.0) < 1e-3
