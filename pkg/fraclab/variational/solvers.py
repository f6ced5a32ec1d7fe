"""
Descent and Newton solvers for the energy Φ.

All solvers work on interior nodal vectors. Descent directions are Sobolev
gradients, i.e. the X-metric steepest descent direction −A⁻¹∇Φ, which
makes step lengths mesh independent.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import LinAlgError, cho_factor, cho_solve, eigh, solve

from fraclab.error import AssemblyError, ConstraintQualificationError, NonFiniteEnergyError, SingularJacobianError
from fraclab.geometry import GridFunction
from fraclab.operator import StiffnessForm, solve_linear
from fraclab.variational.energy import EnergyFunctional
from fraclab.variational.nonlinearity import Nonlinearity, truncate_nonlinearity_sign
from fraclab.variational.report import SolveReport, SolveStatus

logger = logging.getLogger(__name__)

_ROUNDING = 8 * np.finfo(float).eps


@dataclass(frozen=True)
class SolverOptions:
    """Tolerances and limits shared by the solvers."""
    atol: float = 1e-9                # absolute gradient-norm tolerance
    rtol: float = 1e-10               # relative tolerance, scaled by 1 + |Φ|
    max_iter: int = 10_000
    newton_switch: float = 1e-5       # gradient norm below which descent tries Newton steps
    newton_max_iter: int = 50
    armijo: float = 1e-4
    min_step: float = 1e-12
    divergence_energy: float = 1e12   # Φ below −divergence_energy means unbounded below
    singular_rtol: float = 1e-10
    multiplier_tol: float = 1e-6
    seed: int = 0

    def tolerance(self, phi: float) -> float:
        return max(self.atol, self.rtol * (1.0 + abs(phi)))


def _factor(E: EnergyFunctional):
    try:
        return cho_factor(E.form.A)
    except LinAlgError as exc:
        logger.error("Stiffness factorization failed", exc_info=True)
        raise AssemblyError(f"stiffness matrix is not positive definite: {exc}") from exc


def _safe_value(E: EnergyFunctional, vec: np.ndarray) -> float:
    try:
        return E.value(vec)
    except NonFiniteEnergyError:
        return np.nan


def _initial(E: EnergyFunctional, init: Optional[GridFunction]) -> np.ndarray:
    return np.zeros(E.form.size) if init is None else E.vector(init)


def _newton_step(E: EnergyFunctional, u: np.ndarray, phi: float, g: np.ndarray) -> Optional[Tuple[np.ndarray, float, np.ndarray]]:
    try:
        d = solve(E.jacobian(u), -g, assume_a="sym")
    except (LinAlgError, NonFiniteEnergyError):
        return None
    cand = u + d
    phi_c = _safe_value(E, cand)
    if not np.isfinite(phi_c) or phi_c > phi + _ROUNDING * (1.0 + abs(phi)):
        return None
    g_c = E.gradient(cand)
    if np.linalg.norm(g_c) >= np.linalg.norm(g):
        return None
    return cand, phi_c, g_c


def _report(E, u, phi, g, it, status, method, trace, mu=None, c=None) -> SolveReport:
    gn = float(np.linalg.norm(g))
    logger.info(f"{method} finished: status={status.value} iterations={it} energy={phi:.12g} grad_norm={gn:.3e}")
    return SolveReport(
        solution=E.grid(u), energy=float(phi), grad_norm=gn, iterations=it, residual=gn,
        status=status, method=method, mu=mu, c_multiplier=c, critical=E.critical, trace=trace,
    )


def minimize_free(E: EnergyFunctional, init: Optional[GridFunction] = None,
                  options: SolverOptions = SolverOptions()) -> SolveReport:
    """
    Minimize Φ over the whole discrete space.

    Sobolev gradient descent with Armijo backtracking; once the gradient norm
    drops below ``options.newton_switch`` Newton steps are tried and kept when
    they reduce the gradient without raising the energy.

    Returns:
        A report with status ``diverged`` when Φ drops below
        −``options.divergence_energy`` (the functional is not coercive).
    """
    chol = _factor(E)
    u = _initial(E, init)
    phi, g = E.value(u), E.gradient(u)
    trace: List[Tuple[int, float, float]] = []
    status, newton_steps, it = SolveStatus.MAX_ITER, 0, 0
    for it in range(1, options.max_iter + 1):
        gn = float(np.linalg.norm(g))
        if gn <= options.tolerance(phi):
            status = SolveStatus.CONVERGED
            break
        if phi < -options.divergence_energy:
            logger.warning(f"Energy {phi:.3e} below divergence threshold after {it} iterations")
            status = SolveStatus.DIVERGED
            break
        if gn <= options.newton_switch and newton_steps < options.newton_max_iter:
            newton_steps += 1
            step = _newton_step(E, u, phi, g)
            if step is not None:
                u, phi, g = step
                trace.append((it, phi, float(np.linalg.norm(g))))
                logger.debug(f"newton it={it} energy={phi:.15g} grad={trace[-1][2]:.3e}")
                continue
        d = -cho_solve(chol, g)
        slope = float(g @ d)
        t = 1.0
        while t >= options.min_step:
            cand = u + t * d
            phi_c = _safe_value(E, cand)
            if np.isfinite(phi_c) and phi_c <= phi + options.armijo * t * slope + _ROUNDING * (1.0 + abs(phi)):
                break
            t *= 0.5
        else:
            logger.warning(f"Line search stalled at iteration {it} with gradient norm {gn:.3e}")
            break
        u, phi = cand, phi_c
        g = E.gradient(u)
        trace.append((it, phi, float(np.linalg.norm(g))))
        logger.debug(f"descent it={it} energy={phi:.15g} grad={trace[-1][2]:.3e} step={t:.3e}")
    return _report(E, u, phi, g, it, status, "minimize-free", trace)


def minimize_ball(E: EnergyFunctional, eps: float, init: Optional[GridFunction] = None,
                  options: SolverOptions = SolverOptions()) -> SolveReport:
    """
    Minimize Φ over the ball ‖u‖_X ≤ eps by projected Sobolev descent.

    Projection onto the A-norm ball is the radial scaling u ↦ eps·u/‖u‖_X.
    On the boundary the multiplier μ = rᵀu/uᵀAu is the X-metric fit of
    r = Au − b(u) ≈ μAu; strictly inside the ball μ = 0. The report also
    carries C = 1/(1−μ), the factor for which Au = C·b(u).

    Args:
        eps: Ball radius, positive.
        init: Starting point; a seeded random point at radius eps/2 if absent.

    Raises:
        ConstraintQualificationError: If the final boundary multiplier exceeds
            ``options.multiplier_tol``.
    """
    if not eps > 0:
        raise ValueError(f"ball radius must be positive, got {eps}")
    chol = _factor(E)
    A = E.form.A

    def project(v):
        norm = E.x_norm(v)
        return v if norm <= eps else v * (eps / norm)

    if init is None:
        u = np.random.default_rng(options.seed).standard_normal(E.form.size)
        u *= 0.5 * eps / max(E.x_norm(u), 1e-300)
    else:
        u = project(E.vector(init))

    def multiplier(v, grad):
        norm = E.x_norm(v)
        if norm < eps * (1.0 - 1e-9) or norm == 0.0:
            return 0.0, grad
        mu = float(grad @ v) / norm**2
        return mu, (grad - mu * (A @ v) if mu <= 0 else grad)

    phi, g = E.value(u), E.gradient(u)
    trace: List[Tuple[int, float, float]] = []
    status, it = SolveStatus.MAX_ITER, 0
    for it in range(1, options.max_iter + 1):
        mu, stationarity = multiplier(u, g)
        sn = float(np.linalg.norm(stationarity))
        if sn <= options.tolerance(phi):
            status = SolveStatus.CONVERGED
            break
        d = -cho_solve(chol, g)
        t = 1.0
        while t >= options.min_step:
            cand = project(u + t * d)
            slope = float(g @ (cand - u))
            phi_c = _safe_value(E, cand)
            if slope < 0 and np.isfinite(phi_c) and phi_c <= phi + options.armijo * slope + _ROUNDING * (1.0 + abs(phi)):
                break
            t *= 0.5
        else:
            logger.warning(f"Projected line search stalled at iteration {it} with stationarity {sn:.3e}")
            break
        u, phi = cand, phi_c
        g = E.gradient(u)
        trace.append((it, phi, sn))
        logger.debug(f"ball it={it} energy={phi:.15g} stationarity={sn:.3e} step={t:.3e}")
    mu, stationarity = multiplier(u, g)
    if mu > options.multiplier_tol:
        logger.error(f"Ball multiplier {mu:.3e} is positive at the returned point")
        raise ConstraintQualificationError(f"positive ball multiplier {mu:.3e}", multiplier=mu)
    report = _report(E, u, phi, stationarity, it, status, "minimize-ball", trace, mu=mu, c=1.0 / (1.0 - mu))
    return report


def rescaled_residual(E: EnergyFunctional, report: SolveReport) -> float:
    """‖Au − C·b(u)‖ for the report's solution, C = 1 when no multiplier is present."""
    u = E.vector(report.solution)
    c = 1.0 if report.c_multiplier is None else report.c_multiplier
    return float(np.linalg.norm(E.form.A @ u - c * E.load(u)))


def solve_semilinear(E: EnergyFunctional, init: Optional[GridFunction] = None,
                     options: SolverOptions = SolverOptions()) -> SolveReport:
    """
    Damped Newton iteration for Au = b(u).

    Steps are halved until the residual norm decreases.

    Raises:
        SingularJacobianError: If the smallest generalized eigenvalue of the
            Jacobian with respect to M is below ``options.singular_rtol``
            relative to the largest one.
    """
    u = _initial(E, init)
    trace: List[Tuple[int, float, float]] = []
    status = SolveStatus.MAX_ITER
    g = E.gradient(u)
    phi = _safe_value(E, u)
    it = 0
    for it in range(options.newton_max_iter + 1):
        gn = float(np.linalg.norm(g))
        if gn <= options.tolerance(phi if np.isfinite(phi) else 0.0):
            status = SolveStatus.CONVERGED
            break
        if it == options.newton_max_iter:
            break
        J = E.jacobian(u)
        ev = eigh(J, E.form.M, eigvals_only=True)
        smallest = float(np.min(np.abs(ev)))
        if smallest <= options.singular_rtol * float(np.max(np.abs(ev))):
            logger.error(f"Singular Jacobian at Newton iteration {it}: smallest eigenvalue {smallest:.3e}")
            raise SingularJacobianError(
                f"Jacobian is singular (smallest generalized eigenvalue {smallest:.3e})",
                smallest_eigenvalue=smallest,
            )
        d = solve(J, -g, assume_a="sym")
        t = 1.0
        while t >= options.min_step:
            try:
                g_c = E.gradient(u + t * d)
            except NonFiniteEnergyError:
                g_c = None
            if g_c is not None and np.linalg.norm(g_c) <= (1.0 - 1e-4 * t) * gn:
                break
            t *= 0.5
        else:
            logger.warning(f"Newton damping failed at iteration {it}, residual {gn:.3e}")
            break
        u = u + t * d
        g = g_c
        phi = _safe_value(E, u)
        trace.append((it + 1, phi, float(np.linalg.norm(g))))
        logger.debug(f"newton it={it + 1} residual={trace[-1][2]:.3e} damping={t:.3e}")
    if not np.isfinite(phi):
        status = SolveStatus.DIVERGED
    return _report(E, u, phi, g, it, status, "newton", trace)


def minimize_weighted_box(E: EnergyFunctional, center: GridFunction, rho: float,
                          init: Optional[GridFunction] = None,
                          options: SolverOptions = SolverOptions()) -> SolveReport:
    """
    Minimize Φ over the C⁰_δ ball ‖u − center‖_{0,δ} ≤ rho.

    On the mesh this ball is the nodal box |u_i − center_i| ≤ rho·δ_i^s.
    Each iteration tries a clipped Sobolev step first and falls back to a
    clipped diagonally scaled gradient step.
    """
    if not rho > 0:
        raise ValueError(f"box radius must be positive, got {rho}")
    chol = _factor(E)
    c = E.vector(center)
    width = rho * E.mesh.delta[E.mesh.interior] ** E.form.kernel.s
    lo, hi = c - width, c + width
    u = np.clip(c if init is None else E.vector(init), lo, hi)
    diag = np.diag(E.form.A)

    phi, g = E.value(u), E.gradient(u)
    trace: List[Tuple[int, float, float]] = []
    status, it = SolveStatus.MAX_ITER, 0
    for it in range(1, options.max_iter + 1):
        at_lo = (u <= lo + 1e-14 * np.maximum(1.0, np.abs(lo))) & (g > 0)
        at_hi = (u >= hi - 1e-14 * np.maximum(1.0, np.abs(hi))) & (g < 0)
        pg = np.where(at_lo | at_hi, 0.0, g)
        pn = float(np.linalg.norm(pg))
        if pn <= options.tolerance(phi):
            status = SolveStatus.CONVERGED
            break
        accepted = False
        for d in (-cho_solve(chol, g), -g / diag):
            t = 1.0
            while t >= options.min_step:
                cand = np.clip(u + t * d, lo, hi)
                slope = float(g @ (cand - u))
                phi_c = _safe_value(E, cand)
                if slope < 0 and np.isfinite(phi_c) and phi_c <= phi + options.armijo * slope + _ROUNDING * (1.0 + abs(phi)):
                    accepted = True
                    break
                t *= 0.5
            if accepted:
                break
        if not accepted:
            logger.warning(f"Box line search stalled at iteration {it} with projected gradient {pn:.3e}")
            break
        u, phi = cand, phi_c
        g = E.gradient(u)
        trace.append((it, phi, pn))
        logger.debug(f"box it={it} energy={phi:.15g} projected_grad={pn:.3e}")
    at_lo = (u <= lo) & (g > 0)
    at_hi = (u >= hi) & (g < 0)
    return _report(E, u, phi, np.where(at_lo | at_hi, 0.0, g), it, status, "minimize-weighted-box", trace)


@dataclass(frozen=True)
class DescentProbe:
    """Smallest sampled energy change Φ(u+v) − Φ(u) over ‖v‖_X = radius."""
    radii: List[float]
    min_increase: List[float]
    tolerance: float

    @property
    def descent_found(self) -> bool:
        return any(value < -self.tolerance for value in self.min_increase)


def probe_x_ball_descent(E: EnergyFunctional, u: GridFunction, radii: Sequence[float],
                         samples: int = 64, seed: int = 0) -> DescentProbe:
    """
    Sample random directions on X-spheres around ``u`` and record the best
    energy decrease found per radius.
    """
    rng = np.random.default_rng(seed)
    base = E.vector(u)
    phi = E.value(base)
    out = []
    for radius in radii:
        best = np.inf
        for _ in range(samples):
            v = rng.standard_normal(base.size)
            v *= radius / max(E.x_norm(v), 1e-300)
            best = min(best, E.value(base + v) - phi)
        out.append(float(best))
    return DescentProbe(list(map(float, radii)), out, tolerance=1e-12 * (1.0 + abs(phi)))


def sign_minimizers(form: StiffnessForm, nl: Nonlinearity,
                    options: SolverOptions = SolverOptions()) -> Tuple[SolveReport, SolveReport]:
    """
    Minimizers of the energies with f₊ and f₋, started from ± the discrete
    torsion function.

    Returns:
        (report for f₊, report for f₋).
    """
    torsion = solve_linear(form, GridFunction.constant(form.mesh, 1.0))
    plus = minimize_free(EnergyFunctional(form, truncate_nonlinearity_sign(nl, 1)), torsion, options)
    minus = minimize_free(EnergyFunctional(form, truncate_nonlinearity_sign(nl, -1)), -torsion, options)
    return plus, minus
