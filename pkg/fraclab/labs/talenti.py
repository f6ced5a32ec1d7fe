"""
Fractional Talenti functions 𝒯_{ε,z}(x) = (ε/(ε²+|x−z|²))^{(N−2s)/2}, the
fit of the constant Γ for which Γ·𝒯 solves (−Δ)^s u = u^{(N+2s)/(N−2s)},
and their critical norms.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np
from scipy.special import gamma as gamma_fn

from fraclab.error import GammaFitError
from fraclab.geometry import Domain, DomainKind, adaptive_integral, critical_exponent
from fraclab.operator import KernelSpec, pointwise_flap

logger = logging.getLogger(__name__)

PROBE_OFFSETS = (0.0, 0.5, 1.0, 2.0, 4.0)
ANGULAR_POINTS = 1024


def _check(eps: float, N: int, s: float) -> None:
    if not eps > 0:
        raise ValueError(f"eps must be positive, got {eps}")
    if not N > 2 * s:
        raise ValueError(f"Talenti functions need N > 2s, got N={N}, s={s}")


def talenti_eval(eps: float, z, N: int, s: float, x) -> np.ndarray:
    """
    𝒯_{ε,z}(x) at points x of shape (..., N); one dimensional points may drop
    the last axis.
    """
    _check(eps, N, s)
    x = np.asarray(x, dtype=float)
    zz = np.atleast_1d(np.asarray(z, dtype=float))
    if N == 1:
        if x.ndim >= 2 and x.shape[-1] == 1:
            x = x[..., 0]
        dist2 = (x - zz[0]) ** 2
    else:
        dist2 = np.sum((x - zz) ** 2, axis=-1)
    out = (eps / (eps ** 2 + dist2)) ** ((N - 2.0 * s) / 2.0)
    return float(out) if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class TalentiFamily:
    """A member 𝒯_{ε,z} with its fitted constant Γ once known."""
    eps: float
    z: tuple
    N: int
    s: float
    gamma: Optional[float] = None

    def __post_init__(self):
        _check(self.eps, self.N, self.s)

    def __call__(self, x) -> np.ndarray:
        return talenti_eval(self.eps, self.z, self.N, self.s, x)

    @property
    def sup(self) -> float:
        """𝒯_{ε,z}(z) = ε^{−(N−2s)/2}."""
        return self.eps ** (-(self.N - 2.0 * self.s) / 2.0)


@dataclass(frozen=True)
class GammaFit:
    gamma: float
    ratios: List[float]
    probes: List[List[float]]
    errors: List[float]
    spread: float
    exponent: float

    def to_json(self) -> dict:
        return {
            "gamma": self.gamma, "exponent": self.exponent, "spread": self.spread,
            "probes": self.probes, "ratios": self.ratios, "flap_errors": self.errors,
        }


def talenti_fit_gamma(eps: float, z, N: int, s: float, kernel: Optional[KernelSpec] = None,
                      offsets: Sequence[float] = PROBE_OFFSETS, tol: float = 0.01) -> GammaFit:
    """
    Fit Γ(N,s) from flap(𝒯)/𝒯^p at probes z + ε·offset·e₁, p = (N+2s)/(N−2s).

    Γ^{p−1} is the mean ratio, since (−Δ)^s(Γ𝒯) = (Γ𝒯)^p.

    Raises:
        GammaFitError: If the relative spread of the ratios exceeds ``tol``.
    """
    _check(eps, N, s)
    kernel = kernel or KernelSpec(N, s)
    zz = np.atleast_1d(np.asarray(z, dtype=float)).reshape(N)
    family = TalentiFamily(eps, tuple(zz.tolist()), N, s)
    p = (N + 2.0 * s) / (N - 2.0 * s)
    ratios, errors, probes = [], [], []
    for offset in offsets:
        x = zz.copy()
        x[0] += eps * offset
        estimate = pointwise_flap(family, x if N > 1 else float(x[0]), kernel)
        value = family(x[None, :])[0]
        ratios.append(float(estimate.value / value ** p))
        errors.append(float(estimate.error))
        probes.append(x.tolist())
    mean = float(np.mean(ratios))
    spread = float((max(ratios) - min(ratios)) / abs(mean))
    if spread > tol or mean <= 0:
        logger.error(f"Talenti ratios not constant: spread {spread:.3e}")
        raise GammaFitError(f"Talenti ratio varies by {spread:.2%} across probes", ratios=ratios)
    return GammaFit(mean ** (1.0 / (p - 1.0)), ratios, probes, errors, spread, p)


def _sphere_area(N: int) -> float:
    return 2.0 * np.pi ** (N / 2.0) / gamma_fn(N / 2.0)


def talenti_critical_norm(eps: float, N: int, s: float, domain: Optional[Domain] = None, z=None) -> float:
    """
    ‖𝒯_{ε,z}‖_{2*} over ℝ^N (radial quadrature) or over ``domain``.

    Since 𝒯^{2*} = (ε/(ε²+ρ²))^N, the radial integral over ℝ^N does not
    depend on ε and equals π for N = 1, 2. On an interval the integral is an
    arctan difference; on a disk the radial part is ρ_m²/(2(ε²+ρ_m²)) along
    each direction, integrated over angles.
    """
    _check(eps, N, s)
    p = critical_exponent(N, s)
    if domain is None:
        value, _ = adaptive_integral(
            lambda rho: (eps / (eps ** 2 + rho ** 2)) ** N * rho ** (N - 1), 0.0, np.inf, tol=1e-12,
        )
        return float((_sphere_area(N) * value) ** (1.0 / p))
    if domain.dim != N:
        raise ValueError(f"domain dimension {domain.dim} does not match N={N}")
    zz = np.atleast_1d(np.asarray(domain.midpoint if z is None else z, dtype=float))
    if domain.kind == DomainKind.INTERVAL:
        c = float(zz[0])
        value = np.arctan((domain.b - c) / eps) - np.arctan((domain.a - c) / eps)
        return float(value ** (1.0 / p))
    theta = 2.0 * np.pi * np.arange(ANGULAR_POINTS) / ANGULAR_POINTS
    e = np.stack([np.cos(theta), np.sin(theta)], axis=1)
    w = zz - np.asarray(domain.center)
    proj = e @ w
    rho_max = -proj + np.sqrt(proj ** 2 + domain.radius ** 2 - w @ w)
    radial = rho_max ** 2 / (2.0 * (eps ** 2 + rho_max ** 2))
    value = float(np.sum(radial) * 2.0 * np.pi / ANGULAR_POINTS)
    return float(value ** (1.0 / p))


@dataclass(frozen=True)
class BlowupRow:
    eps: float
    sup: float
    critical_norm: float

    @property
    def ratio(self) -> float:
        return self.sup / self.critical_norm


def critical_blowup_demo(domain: Domain, s: Optional[float] = None, eps_values: Sequence[float] = (1.0, 0.5, 0.25, 0.125),
                         z=None) -> List[BlowupRow]:
    """
    Tabulate (ε, ‖𝒯‖∞, ‖𝒯‖_{2*} over Ω) for the Talenti functions centred in Ω.

    Raises:
        ValueError: If some ε <= 0 or the center lies outside Ω.
    """
    s = domain.s if s is None else s
    N = domain.dim
    zz = np.atleast_1d(np.asarray(domain.midpoint if z is None else z, dtype=float))
    if not bool(np.all(domain.contains(zz[None, :], closed=False))):
        raise ValueError(f"center {zz.tolist()} is not inside the domain")
    rows = []
    for eps in eps_values:
        if not eps > 0:
            raise ValueError(f"eps must be positive, got {eps}")
        family = TalentiFamily(float(eps), tuple(zz.tolist()), N, s)
        rows.append(BlowupRow(float(eps), family.sup, talenti_critical_norm(eps, N, s, domain, zz)))
    return rows
