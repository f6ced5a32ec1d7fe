"""
Nodal functions on a mesh, extended by zero outside the domain.
"""

from dataclasses import dataclass
from typing import Callable, Tuple

import numpy as np
from matplotlib.tri import LinearTriInterpolator, Triangulation

from fraclab.error import DomainError, NotInWeightedSpaceError
from fraclab.geometry.domain import as_points
from fraclab.geometry.mesh import Mesh


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Piecewise-linear function given by its values at the mesh nodes."""
    mesh: Mesh
    values: np.ndarray

    def __post_init__(self):
        vals = np.array(self.values, dtype=float)
        if vals.shape != (self.mesh.n_nodes,):
            raise DomainError(f"expected {self.mesh.n_nodes} nodal values, got shape {vals.shape}")
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)

    @classmethod
    def zeros(cls, mesh: Mesh) -> "GridFunction":
        return cls(mesh, np.zeros(mesh.n_nodes))

    @classmethod
    def constant(cls, mesh: Mesh, c: float) -> "GridFunction":
        return cls(mesh, np.full(mesh.n_nodes, float(c)))

    @classmethod
    def from_callable(cls, mesh: Mesh, fn: Callable[[np.ndarray], np.ndarray], zero_boundary: bool = False) -> "GridFunction":
        """Nodal interpolant of ``fn``, which receives points of shape (n, N)."""
        vals = np.asarray(fn(mesh.nodes), dtype=float).reshape(mesh.n_nodes)
        if zero_boundary:
            vals = np.where(mesh.boundary, 0.0, vals)
        return cls(mesh, vals)

    @classmethod
    def from_interior(cls, mesh: Mesh, vec: np.ndarray) -> "GridFunction":
        vals = np.zeros(mesh.n_nodes)
        vals[mesh.interior] = vec
        return cls(mesh, vals)

    @property
    def interior_values(self) -> np.ndarray:
        return self.values[self.mesh.interior]

    @property
    def max_boundary_value(self) -> float:
        b = self.values[self.mesh.boundary]
        return float(np.max(np.abs(b))) if b.size else 0.0

    def require_zero_boundary(self, tol: float = 0.0) -> None:
        if self.max_boundary_value > tol:
            raise NotInWeightedSpaceError(
                f"not in C0_delta: boundary value {self.max_boundary_value:.3e}",
                max_boundary_value=self.max_boundary_value,
            )

    def evaluate(self, points) -> np.ndarray:
        """Values of the interpolant at arbitrary points, zero outside the mesh."""
        pts = as_points(points, self.mesh.dim)
        shape = pts.shape[:-1]
        flat = pts.reshape(-1, self.mesh.dim)
        if self.mesh.dim == 1:
            x = self.mesh.nodes[:, 0]
            out = np.interp(flat[:, 0], x, self.values, left=0.0, right=0.0)
        else:
            tri = Triangulation(self.mesh.nodes[:, 0], self.mesh.nodes[:, 1], self.mesh.elements)
            interp = LinearTriInterpolator(tri, self.values)
            out = np.ma.filled(interp(flat[:, 0], flat[:, 1]), 0.0)
        return np.asarray(out, dtype=float).reshape(shape)

    def __call__(self, points) -> np.ndarray:
        return self.evaluate(points)

    def _check_same_mesh(self, other: "GridFunction") -> None:
        if not self.mesh.same_as(other.mesh):
            raise DomainError("grid functions live on different meshes")

    def __add__(self, other: "GridFunction") -> "GridFunction":
        self._check_same_mesh(other)
        return GridFunction(self.mesh, self.values + other.values)

    def __sub__(self, other: "GridFunction") -> "GridFunction":
        self._check_same_mesh(other)
        return GridFunction(self.mesh, self.values - other.values)

    def __neg__(self) -> "GridFunction":
        return GridFunction(self.mesh, -self.values)

    def __mul__(self, c: float) -> "GridFunction":
        return GridFunction(self.mesh, float(c) * self.values)

    __rmul__ = __mul__


def pos_neg_parts(u: GridFunction) -> Tuple[GridFunction, GridFunction]:
    """Nodal parts u₊ = max(u, 0) and u₋ = max(−u, 0), so u = u₊ − u₋."""
    return (GridFunction(u.mesh, np.maximum(u.values, 0.0)),
            GridFunction(u.mesh, np.maximum(-u.values, 0.0)))
