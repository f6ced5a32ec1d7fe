"""
Nodal verdicts for the weak and strong maximum principles, the barrier
lemma, the Hopf quotient, boundary regularity and the local boundedness
estimate with Tail.

Sign checks are nodal. Their tolerances scale with h and the size of the
data.
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from fraclab.error import DomainError, InvalidCertificateError, PrincipleViolationError
from fraclab.geometry import (
    Domain, GridFunction, boundary_distance, build_mesh, element_quadrature, weighted_holder_norm,
    weighted_quotient,
)
from fraclab.operator import KernelSpec, StiffnessForm, assemble_form, solve_dirichlet, tail
from fraclab.variational import OrderCertificate

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PrincipleVerdict:
    """Outcome of a nodal sign check: ``margin`` is the extreme value at ``worst_index``."""
    passed: bool
    worst_index: int
    margin: float
    context: str
    tolerance: float = 0.0

    def to_json(self) -> dict:
        return {"passed": self.passed, "worst_index": self.worst_index, "margin": self.margin,
                "context": self.context, "tolerance": self.tolerance}


def wmp_check(form: StiffnessForm, u: GridFunction, certificate: OrderCertificate,
              tol: Optional[float] = None) -> PrincipleVerdict:
    """
    Weak maximum principle: a supersolution with nonnegative data is nonnegative.

    The default tolerance is 1e−8·h·rhs_sup.

    Raises:
        InvalidCertificateError: If the certificate is not a passed
            supersolution certificate of ``u`` with nonnegative data.
    """
    if certificate.role != "super" or not certificate.passed:
        raise InvalidCertificateError(f"not a valid supersolution certificate (worst node {certificate.worst_index})")
    if certificate.rhs_min < 0:
        raise InvalidCertificateError(f"certificate data is negative somewhere (min {certificate.rhs_min:.3e})")
    if certificate.function is not u and not np.array_equal(certificate.function.values, u.values):
        raise InvalidCertificateError("certificate was issued for a different function")
    mesh = form.mesh
    if tol is None:
        tol = 1e-8 * mesh.h * certificate.rhs_sup
        if tol == 0.0:
            tol = 1e-14 * max(1.0, float(np.max(np.abs(u.values))))
    inner = u.values[mesh.interior]
    k = int(np.argmin(inner))
    verdict = PrincipleVerdict(bool(inner[k] >= -tol), int(mesh.interior[k]), float(inner[k]),
                               f"wmp n={mesh.n_interior} h={mesh.h:.4g}", tol)
    if not verdict.passed:
        logger.warning(f"Weak maximum principle violated: u={inner[k]:.3e} at node {verdict.worst_index}")
    return verdict


def smp_check(u: GridFunction) -> PrincipleVerdict:
    """
    Strong maximum principle: u > 0 at every interior node.

    Raises:
        ValueError: If u vanishes identically.
    """
    if not np.any(u.values):
        raise ValueError("the strong maximum principle excludes u = 0")
    mesh = u.mesh
    inner = u.values[mesh.interior]
    k = int(np.argmin(inner))
    return PrincipleVerdict(bool(inner[k] > 0.0), int(mesh.interior[k]), float(inner[k]),
                            f"smp n={mesh.n_interior}")


@dataclass(frozen=True, eq=False)
class BarrierResult:
    """The barrier φ on (−R, R) and the largest c with φ >= c(R−|x|)^s on the annulus."""
    phi: GridFunction
    c: float
    worst_index: int
    r: float
    R: float


def barrier(r: float, R: float, kernel: KernelSpec, resolution: int) -> BarrierResult:
    """
    Solve (−Δ)^s φ = 0 in B_R∖B̄_r with φ = 1 on B̄_r and φ = 0 outside B_R.

    One dimensional: B_R is the interval (−R, R) and the data on B̄_r is
    imposed at the nodes with |x| <= r.

    Raises:
        ValueError: Unless 0 < r < R, or for a kernel that is not one dimensional.
        PrincipleViolationError: If the fitted constant is not positive.
    """
    if not 0 < r < R:
        raise ValueError(f"barrier needs 0 < r < R, got r={r}, R={R}")
    if kernel.N != 1:
        raise ValueError("barrier problems with exterior data are one dimensional")
    mesh = build_mesh(Domain.interval(-R, R, kernel.s), resolution)
    form = assemble_form(mesh, kernel)
    x = np.abs(mesh.nodes[:, 0])
    fixed = (x <= r * (1.0 + 1e-12)) & ~mesh.boundary
    phi = solve_dirichlet(form, fixed, np.where(fixed, 1.0, 0.0))
    annulus = (x > r * (1.0 + 1e-12)) & ~mesh.boundary
    if not np.any(annulus):
        raise ValueError(f"resolution {resolution} leaves no nodes between r and R")
    idx = np.flatnonzero(annulus)
    quotient = phi.values[idx] / (R - x[idx]) ** kernel.s
    k = int(np.argmin(quotient))
    c = float(quotient[k])
    logger.debug(f"Barrier r={r} R={R} n={resolution}: c={c:.6g} at node {idx[k]}")
    if not c > 0:
        logger.error(f"Barrier constant {c:.3e} is not positive")
        raise PrincipleViolationError(f"barrier constant c={c:.3e} is not positive at node {idx[k]}")
    return BarrierResult(phi, c, int(idx[k]), r, R)


@dataclass(frozen=True)
class HopfQuotient:
    value: float
    node: int
    x: tuple


def hopf_quotient(u: GridFunction, domain: Optional[Domain] = None) -> HopfQuotient:
    """
    min over interior nodes of u/δ^s.

    Args:
        u: A nonnegative discrete function.
        domain: Domain measuring δ and supplying s; defaults to ``u.mesh.domain``.

    Raises:
        InvalidCertificateError: If u is negative at a node or identically zero.
        DomainError: If an interior node of u lies outside the open domain.
    """
    if np.any(u.values < 0):
        raise InvalidCertificateError(f"Hopf quotient needs u >= 0, min is {u.values.min():.3e}")
    if not np.any(u.values):
        raise InvalidCertificateError("Hopf quotient needs u != 0")
    mesh = u.mesh
    if domain is None or domain == mesh.domain:
        q = weighted_quotient(u)
    else:
        delta = np.atleast_1d(boundary_distance(domain, mesh.nodes[mesh.interior]))
        if np.any(delta <= 0):
            raise DomainError("Hopf quotient needs every interior node strictly inside the domain")
        q = u.values[mesh.interior] / delta ** domain.s
    k = int(np.argmin(q))
    node = int(mesh.interior[k])
    return HopfQuotient(float(q[k]), node, tuple(mesh.nodes[node].tolist()))


def regularity_ratio(u: GridFunction, f: GridFunction, alpha: Optional[float] = None) -> float:
    """
    ‖u‖_{α,δ}/‖f‖∞ for the solution u of Au = Mf.

    Raises:
        ValueError: If f vanishes.
    """
    f_sup = float(np.max(np.abs(f.values)))
    if f_sup == 0.0:
        raise ValueError("regularity ratio needs f != 0")
    return weighted_holder_norm(u, alpha) / f_sup


@dataclass(frozen=True)
class LocalBoundResult:
    """
    Terms of sup_{B_{r/2}} u <= k + Tail((u−k)_+; x0, r/2) + C·(⨍_{B_r} (u−k)_+²)^{1/2}
    and the smallest C making it hold on the instance.
    """
    lhs: float
    k: float
    tail: float
    l2_term: float
    implied_constant: float

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.implied_constant))


def local_bound_check(u: GridFunction, x0, r: float, k: float, kernel: Optional[KernelSpec] = None) -> LocalBoundResult:
    """
    Evaluate the local boundedness estimate on a discrete subsolution.

    Raises:
        ValueError: If r <= 0 or k < 0.
        DomainError: If B_r(x0) is not contained in Ω.
    """
    if not r > 0:
        raise ValueError(f"radius must be positive, got {r}")
    if k < 0:
        raise ValueError(f"level k must be nonnegative, got {k}")
    mesh = u.mesh
    domain = mesh.domain
    center = np.atleast_1d(np.asarray(x0, dtype=float))
    if float(np.ravel(boundary_distance(domain, center[None, :]))[0]) < r * (1.0 - 1e-12):
        raise DomainError(f"ball of radius {r} around {center.tolist()} leaves the domain")
    kernel = kernel or KernelSpec.for_domain(domain)

    dist = np.linalg.norm(mesh.nodes - center, axis=1)
    half = dist <= 0.5 * r * (1.0 + 1e-12)
    if not np.any(half):
        raise ValueError(f"no mesh node within r/2 = {0.5 * r} of {center.tolist()}")
    lhs = float(np.max(u.values[half]))

    def excess(v):
        return np.maximum(v - k, 0.0)

    tail_term = tail(u, center, 0.5 * r, kernel, transform=excess)
    rule = element_quadrature(mesh, 4)
    inside = np.linalg.norm(rule.points - center, axis=-1) < r
    ball = 2.0 * r if mesh.dim == 1 else np.pi * r ** 2
    l2 = float(np.sqrt(np.sum(np.where(inside, rule.weights * excess(rule.interpolate(u.values)) ** 2, 0.0)) / ball))

    numerator = lhs - k - tail_term
    if numerator <= 0:
        implied = 0.0
    elif l2 == 0.0:
        implied = np.inf
        logger.warning(f"Local bound fails: excess {numerator:.3e} with vanishing L2 term")
    else:
        implied = numerator / l2
    return LocalBoundResult(lhs, float(k), float(tail_term), l2, float(implied))
