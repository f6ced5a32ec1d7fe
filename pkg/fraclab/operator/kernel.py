"""
The singular kernel |x−y|^{−(N+2s)} and the constants that come with it.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.special import gamma

from fraclab.geometry import Domain, DomainKind, GridFunction, Mesh


def _squeeze_line(arr: np.ndarray) -> np.ndarray:
    """Drop a trailing axis of length 1 (points on the line given as (n, 1)); (n,) is left alone."""
    return arr[..., 0] if arr.ndim >= 2 and arr.shape[-1] == 1 else arr


def fractional_normalization(N: int, s: float) -> float:
    """C(N,s) = s·4^s·Γ(N/2+s) / (π^{N/2}·Γ(1−s))."""
    return float(s * 4.0 ** s * gamma(N / 2 + s) / (np.pi ** (N / 2) * gamma(1 - s)))


def torsion_constant(N: int, s: float) -> float:
    """(−Δ)^s (1−|x|²)^s_+ on the unit ball, in the standard normalization."""
    return float(4.0 ** s * gamma(1 + s) * gamma(N / 2 + s) / gamma(N / 2))


@dataclass(frozen=True)
class KernelSpec:
    """
    Kernel data: dimension, order and the constant in front of the integral.

    ``normalization`` defaults to the standard C(N,s), under which the
    discrete problem approximates the fractional Laplacian of the usual
    Fourier symbol |ξ|^{2s}. Use :meth:`unit` for the constant 1.
    """
    N: int
    s: float
    normalization: Optional[float] = field(default=None)

    def __post_init__(self):
        if self.N not in (1, 2):
            raise ValueError(f"kernel dimension must be 1 or 2, got {self.N}")
        if not 0.0 < self.s < 1.0:
            raise ValueError(f"s must lie in (0,1), got {self.s}")
        if self.normalization is None:
            object.__setattr__(self, "normalization", fractional_normalization(self.N, self.s))
        elif not self.normalization > 0:
            raise ValueError(f"normalization must be positive, got {self.normalization}")

    @classmethod
    def unit(cls, N: int, s: float) -> "KernelSpec":
        return cls(N=N, s=s, normalization=1.0)

    @classmethod
    def for_domain(cls, domain: Domain) -> "KernelSpec":
        return cls(N=domain.dim, s=domain.s)

    def __call__(self, x, y) -> np.ndarray:
        """K(x,y) without the normalization constant."""
        diff = np.asarray(x, dtype=float) - np.asarray(y, dtype=float)
        if self.N == 1:
            r = np.abs(_squeeze_line(diff))
        else:
            r = np.linalg.norm(diff, axis=-1)
        return r ** (-(self.N + 2 * self.s))


def torsion_profile(domain: Domain, normalization: Optional[float] = None):
    """
    Closed-form solution of (−Δ)^s u = 1 with zero exterior data.

    Returns a callable on points of shape (..., N). The formula holds in the
    standard normalization; another constant rescales it accordingly.
    """
    N, s = domain.dim, domain.s
    k = torsion_constant(N, s)
    if normalization is not None:
        k *= normalization / fractional_normalization(N, s)
    if domain.kind == DomainKind.INTERVAL:
        c, R = 0.5 * (domain.a + domain.b), 0.5 * (domain.b - domain.a)
    else:
        c, R = np.asarray(domain.center), domain.radius

    def profile(points) -> np.ndarray:
        pts = np.asarray(points, dtype=float)
        if N == 1:
            r2 = (_squeeze_line(pts) - c) ** 2
        else:
            r2 = np.sum((pts - c) ** 2, axis=-1)
        return np.maximum(R ** 2 - r2, 0.0) ** s / k

    return profile


def torsion_interpolant(mesh: Mesh) -> GridFunction:
    """Nodal interpolant of the exact torsion profile on ``mesh``."""
    return GridFunction.from_callable(mesh, torsion_profile(mesh.domain), zero_boundary=True)
