"""
Bilinear form evaluation and linear solves with the assembled form.
"""

import logging
from typing import Optional

import numpy as np
from scipy.linalg import cho_factor, cho_solve, LinAlgError

from fraclab.error import AssemblyError, DomainError
from fraclab.geometry import GridFunction
from fraclab.geometry.quadrature import element_quadrature
from fraclab.operator.assembly import StiffnessForm

logger = logging.getLogger(__name__)


def _interior(form: StiffnessForm, u: GridFunction) -> np.ndarray:
    if not form.mesh.same_as(u.mesh):
        raise DomainError("grid function does not live on the form's mesh")
    u.require_zero_boundary()
    return u.interior_values


def apply_form(form: StiffnessForm, u: GridFunction, v: GridFunction) -> float:
    """⟨u, v⟩_X = uᵀ A v over interior nodes."""
    return float(_interior(form, u) @ form.A @ _interior(form, v))


def seminorm(form: StiffnessForm, u: GridFunction) -> float:
    """Discrete Gagliardo seminorm √(uᵀAu)."""
    value = apply_form(form, u, u)
    if value < -1e-12 * max(1.0, float(np.abs(form.A).max())):
        raise AssemblyError(f"negative quadratic form value {value:.3e}")
    return float(np.sqrt(max(value, 0.0)))


def mass_product(form: StiffnessForm, u: GridFunction, v: GridFunction) -> float:
    return float(u.interior_values @ form.M @ v.interior_values)


def load_vector(form: StiffnessForm, g: GridFunction, order: int = 2) -> np.ndarray:
    """Interior vector ∫ g_h φ_i for a piecewise-linear g (equals M g on interior nodes when g vanishes on ∂Ω)."""
    rule = element_quadrature(form.mesh, order)
    return rule.load(rule.interpolate(g.values))[form.mesh.interior]


def _factor(matrix: np.ndarray):
    try:
        return cho_factor(matrix)
    except LinAlgError as exc:
        logger.error("Cholesky factorization failed", exc_info=True)
        raise AssemblyError(f"stiffness matrix is not positive definite: {exc}") from exc


def solve_linear(form: StiffnessForm, g: GridFunction) -> GridFunction:
    """Discrete solution of (−Δ)^s u = g in Ω, u = 0 outside."""
    b = load_vector(form, g)
    return GridFunction.from_interior(form.mesh, cho_solve(_factor(form.A), b))


def solve_dirichlet(
    form: StiffnessForm,
    fixed: np.ndarray,
    values: np.ndarray,
    rhs: Optional[GridFunction] = None,
) -> GridFunction:
    """
    Solve with prescribed values at some interior nodes of the mesh.

    Nodes in ``fixed`` (a boolean mask over all nodes) act as exterior data
    for the remaining unknowns: A_UU u_U = b_U − A_UF g_F.

    Args:
        form: Form on the enlarged mesh.
        fixed: Boolean mask over all mesh nodes.
        values: Nodal values of the data on all nodes (only fixed ones are used).
        rhs: Right-hand side in the free region, zero if absent.
    """
    mesh = form.mesh
    fixed = np.asarray(fixed, dtype=bool)
    free_in = ~fixed[mesh.interior]
    fixed_in = fixed[mesh.interior]
    if np.any(fixed & mesh.boundary & (np.asarray(values) != 0)):
        raise DomainError("data on the outer mesh boundary must be zero")
    g = np.asarray(values, dtype=float)[mesh.interior][fixed_in]
    b = np.zeros(int(free_in.sum()))
    if rhs is not None:
        b = load_vector(form, rhs)[free_in]
    A_uu = form.A[np.ix_(free_in, free_in)]
    A_uf = form.A[np.ix_(free_in, fixed_in)]
    u_free = cho_solve(_factor(A_uu), b - A_uf @ g)
    out = np.zeros(mesh.n_nodes)
    interior_vals = np.zeros(mesh.n_interior)
    interior_vals[free_in] = u_free
    interior_vals[fixed_in] = g
    out[mesh.interior] = interior_vals
    return GridFunction(mesh, out)
