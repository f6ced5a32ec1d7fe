"""
The energy Φ(u) = ½‖u‖_X² − ∫_Ω F(x, u) dx on the interior nodal unknowns.

The load b_i(u) = ∫ f(x, u_h) φ_i uses the same element rule as the
integral of F, so ``gradient`` is the exact derivative of ``value``.
"""

import logging

import numpy as np

from fraclab.error import DomainError, NonFiniteEnergyError
from fraclab.geometry import GridFunction, critical_exponent
from fraclab.geometry.quadrature import element_quadrature
from fraclab.operator import StiffnessForm
from fraclab.variational.nonlinearity import Nonlinearity

logger = logging.getLogger(__name__)


class EnergyFunctional:
    """
    Φ for a fixed form and nonlinearity.

    Methods taking ``vec`` work on interior nodal vectors; :func:`energy` and
    :func:`energy_gradient` are the grid-function front ends.
    """

    def __init__(self, form: StiffnessForm, nl: Nonlinearity, order: int = 2):
        self.form = form
        self.nl = nl
        self.mesh = form.mesh
        self.rule = element_quadrature(form.mesh, order)
        self._full = np.zeros(form.mesh.n_nodes)

    def _at_points(self, vec: np.ndarray) -> np.ndarray:
        full = self._full.copy()
        full[self.mesh.interior] = vec
        return self.rule.interpolate(full)

    def _check(self, values: np.ndarray, what: str) -> np.ndarray:
        bad = ~np.isfinite(values)
        if np.any(bad):
            idx = np.unravel_index(int(np.argmax(bad)), values.shape)
            location = self.rule.points[idx].tolist()
            raise NonFiniteEnergyError(f"non-finite {what} of {self.nl.name} at x={location}", location=location)
        return values

    def primitive_integral(self, vec: np.ndarray) -> float:
        with np.errstate(over="ignore", invalid="ignore"):
            F = self.nl.F(self.rule.points, self._at_points(vec))
        return self.rule.integrate(self._check(np.asarray(F, dtype=float), "primitive"))

    def value(self, vec: np.ndarray) -> float:
        return float(0.5 * vec @ self.form.A @ vec - self.primitive_integral(vec))

    def load(self, vec: np.ndarray) -> np.ndarray:
        with np.errstate(over="ignore", invalid="ignore"):
            f = self.nl.f(self.rule.points, self._at_points(vec))
        f = self._check(np.broadcast_to(np.asarray(f, dtype=float), self.rule.weights.shape), "load")
        return self.rule.load(f)[self.mesh.interior]

    def gradient(self, vec: np.ndarray) -> np.ndarray:
        """Nodal residual A u − b(u)."""
        return self.form.A @ vec - self.load(vec)

    def jacobian(self, vec: np.ndarray) -> np.ndarray:
        """A − ∫ ∂_t f(x, u_h) φ_i φ_j."""
        with np.errstate(over="ignore", invalid="ignore"):
            d = self.nl.derivative(self.rule.points, self._at_points(vec))
        d = self._check(np.broadcast_to(np.asarray(d, dtype=float), self.rule.weights.shape), "derivative")
        local = np.einsum("mq,qa,qb->mab", self.rule.weights * d, self.rule.basis, self.rule.basis)
        K = np.zeros((self.mesh.n_nodes, self.mesh.n_nodes))
        el = self.mesh.elements
        np.add.at(K, (el[:, :, None], el[:, None, :]), local)
        inner = self.mesh.interior
        return self.form.A - K[np.ix_(inner, inner)]

    def x_norm(self, vec: np.ndarray) -> float:
        return float(np.sqrt(max(vec @ self.form.A @ vec, 0.0)))

    @property
    def critical(self) -> bool:
        """Growth exponent equals the critical Sobolev exponent."""
        try:
            crit = critical_exponent(self.form.kernel.N, self.form.kernel.s)
        except ValueError:
            return False
        return abs(self.nl.q - crit) <= 1e-12 * crit

    def vector(self, u: GridFunction) -> np.ndarray:
        if not self.mesh.same_as(u.mesh):
            raise DomainError("grid function does not live on the form's mesh")
        u.require_zero_boundary()
        return np.array(u.interior_values)

    def grid(self, vec: np.ndarray) -> GridFunction:
        return GridFunction.from_interior(self.mesh, vec)


def energy(E: EnergyFunctional, u: GridFunction) -> float:
    """
    Φ(u) = ½uᵀAu − ∫ F(x, u_h).

    Raises:
        NotInWeightedSpaceError: If u is nonzero on the boundary.
        NonFiniteEnergyError: If F is not finite at a quadrature point.
    """
    return E.value(E.vector(u))


def energy_gradient(E: EnergyFunctional, u: GridFunction) -> GridFunction:
    """Nodal residual Au − b(u) as a grid function (zero on the boundary)."""
    return E.grid(E.gradient(E.vector(u)))
