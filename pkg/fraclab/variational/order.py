"""
Ordered sub/supersolution pairs, their residual certificates, and the
sub-supersolution solver.
"""

import logging
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from fraclab.error import DomainError, InvalidCertificateError, OrderViolationError, SandwichViolationError
from fraclab.geometry import GridFunction
from fraclab.operator import StiffnessForm
from fraclab.variational.energy import EnergyFunctional
from fraclab.variational.nonlinearity import Nonlinearity, clamp_between
from fraclab.variational.report import SolveReport, SolveStatus
from fraclab.variational.solvers import SolverOptions, minimize_free

logger = logging.getLogger(__name__)

SUB = "sub"
SUPER = "super"


@dataclass(frozen=True, eq=False)
class OrderCertificate:
    """
    Sign test of r = Au − b(u) against nonnegative nodal test directions.

    Attributes:
        function: The certified grid function.
        worst_index: Full-mesh node index of the most unfavourable residual entry.
        worst_value: Residual at that node.
        is_solution: Both roles pass.
        rhs_sup: sup |f(x, u(x))| over quadrature points.
        rhs_min: inf f(x, u(x)) over quadrature points.
    """
    role: str
    passed: bool
    worst_index: int
    worst_value: float
    is_solution: bool
    rhs_sup: float
    rhs_min: float
    tolerance: float
    function: GridFunction
    residual: GridFunction


def check_order_residuals(form: StiffnessForm, nl: Nonlinearity, u: GridFunction, role: str,
                          tol: Optional[float] = None) -> OrderCertificate:
    """
    Certify ``u`` as a discrete weak sub- or supersolution.

    A supersolution needs min r >= −tol, a subsolution max r <= tol. The
    default tolerance is 1e−9 relative to the larger of ‖Au‖∞ and ‖b(u)‖∞.

    Raises:
        ValueError: If ``role`` is not "sub" or "super".
        NotInWeightedSpaceError: If u is nonzero on the boundary.
    """
    if role not in (SUB, SUPER):
        raise ValueError(f"role must be 'sub' or 'super', got {role!r}")
    E = EnergyFunctional(form, nl)
    vec = E.vector(u)
    Au = form.A @ vec
    b = E.load(vec)
    r = Au - b
    if tol is None:
        scale = max(float(np.max(np.abs(Au), initial=0.0)), float(np.max(np.abs(b), initial=0.0)))
        tol = 1e-9 * scale if scale > 0 else 1e-300
    full = np.zeros(form.mesh.n_nodes)
    full[form.mesh.interior] = vec
    fvals = np.broadcast_to(np.asarray(nl.f(E.rule.points, E.rule.interpolate(full)), dtype=float), E.rule.weights.shape)

    k = int(np.argmin(r)) if role == SUPER else int(np.argmax(r))
    worst = float(r[k]) if r.size else 0.0
    passed = worst >= -tol if role == SUPER else worst <= tol
    is_solution = bool(np.max(np.abs(r), initial=0.0) <= tol)
    if not passed:
        logger.info(f"{role}solution certificate failed at node {form.mesh.interior[k]}: residual {worst:.3e}")
    return OrderCertificate(
        role=role, passed=bool(passed), worst_index=int(form.mesh.interior[k]) if r.size else -1,
        worst_value=worst, is_solution=is_solution, rhs_sup=float(np.max(np.abs(fvals))),
        rhs_min=float(np.min(fvals)), tolerance=float(tol), function=u, residual=E.grid(r),
    )


@dataclass(frozen=True, eq=False)
class OrderedPair:
    """
    A subsolution candidate below a supersolution candidate.

    Raises:
        OrderViolationError: If lower > upper at some node.
    """
    lower: GridFunction
    upper: GridFunction
    lower_certificate: Optional[OrderCertificate] = None
    upper_certificate: Optional[OrderCertificate] = None

    def __post_init__(self):
        if not self.lower.mesh.same_as(self.upper.mesh):
            raise DomainError("ordered pair functions live on different meshes")
        gap = self.upper.values - self.lower.values
        scale = max(1.0, float(np.max(np.abs(self.upper.values))), float(np.max(np.abs(self.lower.values))))
        if gap.size and gap.min() < -1e-12 * scale:
            node = int(np.argmin(gap))
            raise OrderViolationError(f"lower exceeds upper by {-gap[node]:.3e} at node {node}", node=node)

    def certified(self, form: StiffnessForm, nl: Nonlinearity) -> "OrderedPair":
        """Copy with both certificates computed."""
        return replace(
            self,
            lower_certificate=check_order_residuals(form, nl, self.lower, SUB),
            upper_certificate=check_order_residuals(form, nl, self.upper, SUPER),
        )


def truncate_nonlinearity_order(nl: Nonlinearity, pair: OrderedPair) -> Nonlinearity:
    """f̃(x, t) = f(x, clamp(t, lower(x), upper(x)))."""
    OrderedPair(pair.lower, pair.upper)
    return clamp_between(nl, pair.lower, pair.upper)


def subsupersolution_solve(form: StiffnessForm, nl: Nonlinearity, pair: OrderedPair,
                           options: SolverOptions = SolverOptions()) -> SolveReport:
    """
    Find a solution between a certified sub- and supersolution.

    Minimizes the energy of the order-truncated nonlinearity from the pair's
    midpoint, checks the nodal sandwich and reports the residual of the
    original equation at the minimizer.

    Raises:
        ValueError: If ``nl`` is not monotone in t.
        InvalidCertificateError: If a certificate of the pair fails.
        SandwichViolationError: If the minimizer leaves [lower, upper].
    """
    if not nl.monotone:
        raise ValueError(f"nonlinearity {nl.name} is not flagged monotone in t")
    if pair.lower_certificate is None or pair.upper_certificate is None:
        pair = pair.certified(form, nl)
    for cert, role in ((pair.lower_certificate, SUB), (pair.upper_certificate, SUPER)):
        if cert.role != role or not cert.passed:
            raise InvalidCertificateError(f"{role}solution certificate failed at node {cert.worst_index}")

    truncated = EnergyFunctional(form, truncate_nonlinearity_order(nl, pair))
    start = (pair.lower + pair.upper) * 0.5
    inner = minimize_free(truncated, start, options)

    u = inner.solution
    inside = form.mesh.interior
    below = u.values[inside] - pair.lower.values[inside]
    above = pair.upper.values[inside] - u.values[inside]
    tol = 1e-8 * max(1.0, float(np.max(np.abs(pair.upper.values - pair.lower.values))))
    for gap, side in ((below, "lower"), (above, "upper")):
        if gap.size and gap.min() < -tol:
            node = int(inside[np.argmin(gap)])
            logger.error(f"Sub-supersolution iterate escapes the {side} bound at node {node}")
            raise SandwichViolationError(f"solution escapes the {side} bound by {-gap.min():.3e} at node {node}", node=node)

    E = EnergyFunctional(form, nl)
    vec = E.vector(u)
    g = E.gradient(vec)
    phi = E.value(vec)
    gn = float(np.linalg.norm(g))
    status = inner.status
    if status is SolveStatus.CONVERGED and gn > options.tolerance(phi):
        status = SolveStatus.MAX_ITER
    margins = (float(below.min()) if below.size else 0.0, float(above.min()) if above.size else 0.0)
    logger.info(f"sub-supersolution solve: status={status.value} residual={gn:.3e} margins={margins}")
    return replace(inner, energy=phi, grad_norm=gn, residual=gn, status=status,
                   method="sub-supersolution", critical=E.critical, sandwich_margins=margins)
