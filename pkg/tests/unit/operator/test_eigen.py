"""
Unit tests for the generalized eigensolver.
"""

import numpy as np
import pytest
from scipy.linalg import eigh

from fraclab.operator import eigenpairs, eigenpairs_csv


def test_first_eigenvalue_range(form32):
    pairs = eigenpairs(form32, 3)
    assert 1.0 < pairs[0].eigenvalue < 1.3
    assert [p.index for p in pairs] == [1, 2, 3]
    assert pairs[0].eigenvalue <= pairs[1].eigenvalue <= pairs[2].eigenvalue


def test_matches_dense_solver(form32):
    pairs = eigenpairs(form32, 4)
    dense = eigh(form32.A, form32.M, eigvals_only=True)[:4]
    np.testing.assert_allclose([p.eigenvalue for p in pairs], dense, rtol=1e-8)


def test_normalized_and_positive(form32):
    first = eigenpairs(form32, 1)[0]
    vec = first.eigenfunction.interior_values
    assert abs(vec @ form32.M @ vec - 1.0) < 1e-12
    assert np.all(vec > 0)
    assert first.residual <= 1e-8


def test_count_out_of_range(form32):
    with pytest.raises(ValueError):
        eigenpairs(form32, 0)


def test_csv_columns(form32):
    text = eigenpairs_csv(eigenpairs(form32, 2))
    lines = text.splitlines()
    assert lines[0] == "index,lambda,residual"
    assert len(lines) == 3
