"""
Quadrature rules on mesh elements and a checked adaptive integrator.
"""

import logging
import warnings
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional, Sequence, Tuple

import numpy as np
from scipy import integrate

from fraclab.error import QuadratureError
from fraclab.geometry.mesh import Mesh

logger = logging.getLogger(__name__)

# Symmetric triangle rules in barycentric coordinates: (points, weights summing to 1).
_TRIANGLE_RULES = {
    2: (
        np.array([[2 / 3, 1 / 6, 1 / 6], [1 / 6, 2 / 3, 1 / 6], [1 / 6, 1 / 6, 2 / 3]]),
        np.full(3, 1 / 3),
    ),
    4: (
        np.array([
            [0.108103018168070, 0.445948490915965, 0.445948490915965],
            [0.445948490915965, 0.108103018168070, 0.445948490915965],
            [0.445948490915965, 0.445948490915965, 0.108103018168070],
            [0.816847572980459, 0.091576213509771, 0.091576213509771],
            [0.091576213509771, 0.816847572980459, 0.091576213509771],
            [0.091576213509771, 0.091576213509771, 0.816847572980459],
        ]),
        np.array([0.223381589678011] * 3 + [0.109951743655322] * 3),
    ),
}


@lru_cache(maxsize=None)
def gauss_legendre(n: int) -> Tuple[np.ndarray, np.ndarray]:
    """n-point Gauss-Legendre nodes and weights on [0, 1]."""
    x, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * (x + 1.0), 0.5 * w


def triangle_rule(degree: int) -> Tuple[np.ndarray, np.ndarray]:
    """Barycentric points (q, 3) and weights (q,) exact for the given degree."""
    if degree <= 2:
        return _TRIANGLE_RULES[2]
    return _TRIANGLE_RULES[4]


def subdivided_triangle_rule(degree: int, levels: int = 1) -> Tuple[np.ndarray, np.ndarray]:
    """Composite rule on the 4**levels congruent subtriangles of the reference triangle."""
    bary, weights = triangle_rule(degree)
    cells = [np.eye(3)]
    for _ in range(levels):
        refined = []
        for c in cells:
            m01, m12, m20 = (c[0] + c[1]) / 2, (c[1] + c[2]) / 2, (c[2] + c[0]) / 2
            refined += [np.array([c[0], m01, m20]), np.array([m01, c[1], m12]),
                        np.array([m20, m12, c[2]]), np.array([m01, m12, m20])]
        cells = refined
    pts = np.vstack([bary @ c for c in cells])
    w = np.concatenate([weights / len(cells)] * len(cells))
    return pts, w


@dataclass(frozen=True, eq=False)
class ElementQuadrature:
    """
    A quadrature rule mapped onto every element of a mesh.

    Attributes:
        points: Physical points, shape (m, q, N).
        weights: Physical weights, shape (m, q); they sum to the mesh measure.
        basis: Local hat-function values at the reference points, shape (q, N+1).
    """
    mesh: Mesh
    points: np.ndarray
    weights: np.ndarray
    basis: np.ndarray

    def interpolate(self, nodal: np.ndarray) -> np.ndarray:
        """Values of the piecewise-linear interpolant at the points, shape (m, q)."""
        return nodal[self.mesh.elements] @ self.basis.T

    def integrate(self, values: np.ndarray) -> float:
        return float(np.sum(self.weights * values))

    def load(self, values: np.ndarray) -> np.ndarray:
        """Full-node vector of ∫ values·φ_i."""
        local = np.einsum("mq,qa->ma", self.weights * values, self.basis)
        out = np.zeros(self.mesh.n_nodes)
        np.add.at(out, self.mesh.elements, local)
        return out


def element_quadrature(mesh: Mesh, order: int = 2) -> ElementQuadrature:
    """
    Map a reference rule onto all elements.

    ``order`` is the number of Gauss points per segment in 1D and the
    polynomial degree of the triangle rule in 2D.
    """
    if mesh.dim == 1:
        t, w = gauss_legendre(order)
        basis = np.stack([1.0 - t, t], axis=1)
        x = mesh.nodes[mesh.elements, 0]
        pts = x[:, :1] + np.outer(x[:, 1] - x[:, 0], t)
        weights = np.outer(mesh.element_measures, w)
        return ElementQuadrature(mesh, pts[..., None], weights, basis)
    bary, w = triangle_rule(order)
    corners = mesh.nodes[mesh.elements]
    pts = np.einsum("qa,mad->mqd", bary, corners)
    weights = np.outer(mesh.element_measures, w)
    return ElementQuadrature(mesh, pts, weights, bary.copy())


def adaptive_integral(
    func: Callable[[float], float],
    a: float,
    b: float,
    points: Optional[Sequence[float]] = None,
    tol: float = 1e-10,
    limit: int = 500,
    accept: float = 1e-7,
) -> Tuple[float, float]:
    """
    scipy.integrate.quad with the error bound checked.

    Returns:
        (value, error bound).

    Raises:
        QuadratureError: If the achieved bound exceeds ``accept``·max(1, |value|).
    """
    kwargs = {"epsabs": tol, "epsrel": tol, "limit": limit}
    if points is not None and np.isfinite(a) and np.isfinite(b):
        inner = sorted(p for p in points if a < p < b)
        if inner:
            kwargs["points"] = inner
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", integrate.IntegrationWarning)
        value, err = integrate.quad(func, a, b, **kwargs)
    if caught:
        logger.debug(f"quad on [{a}, {b}]: {caught[0].message}")
    if not np.isfinite(value) or err > accept * max(1.0, abs(value)):
        logger.error(f"Quadrature on [{a}, {b}] stopped at error bound {err:.3e}")
        raise QuadratureError(f"quadrature on [{a}, {b}] reached error bound {err:.3e}", error_bound=err)
    return float(value), float(err)
