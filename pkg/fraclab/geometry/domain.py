"""
Computational domains: intervals and planar disks.

Both geometries are C^{1,1}, so the boundary distance δ behaves like the
distance to a smooth boundary, which the weighted norms rely on.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Tuple

import numpy as np

from fraclab.error import DomainError

# Points closer than this to the boundary count as lying on it.
BOUNDARY_TOL = 1e-12


class DomainKind(str, Enum):
    INTERVAL = "interval"
    DISK = "disk"


@dataclass(frozen=True)
class Domain:
    """
    An interval (a, b) or a disk B_radius(center), with fractional order s.

    Use the :meth:`interval` and :meth:`disk` constructors rather than
    filling the fields by hand.
    """
    kind: DomainKind
    s: float
    a: float = 0.0
    b: float = 0.0
    center: Tuple[float, float] = (0.0, 0.0)
    radius: float = 0.0

    def __post_init__(self):
        if not 0.0 < self.s < 1.0:
            raise DomainError(f"s must lie in (0,1), got {self.s}")
        if self.kind == DomainKind.INTERVAL and not self.a < self.b:
            raise DomainError(f"interval needs a < b, got ({self.a}, {self.b})")
        if self.kind == DomainKind.DISK and not self.radius > 0.0:
            raise DomainError(f"disk radius must be positive, got {self.radius}")

    @classmethod
    def interval(cls, a: float, b: float, s: float) -> "Domain":
        return cls(kind=DomainKind.INTERVAL, s=float(s), a=float(a), b=float(b))

    @classmethod
    def disk(cls, center: Tuple[float, float], radius: float, s: float) -> "Domain":
        cx, cy = center
        return cls(kind=DomainKind.DISK, s=float(s), center=(float(cx), float(cy)), radius=float(radius))

    @property
    def dim(self) -> int:
        return 1 if self.kind == DomainKind.INTERVAL else 2

    @property
    def measure(self) -> float:
        if self.kind == DomainKind.INTERVAL:
            return self.b - self.a
        return float(np.pi * self.radius ** 2)

    @property
    def diameter(self) -> float:
        if self.kind == DomainKind.INTERVAL:
            return self.b - self.a
        return 2.0 * self.radius

    @property
    def midpoint(self) -> np.ndarray:
        if self.kind == DomainKind.INTERVAL:
            return np.array([0.5 * (self.a + self.b)])
        return np.array(self.center)

    def with_order(self, s: float) -> "Domain":
        """Same geometry, different fractional order."""
        if self.kind == DomainKind.INTERVAL:
            return Domain.interval(self.a, self.b, s)
        return Domain.disk(self.center, self.radius, s)

    def signed_distance(self, points) -> np.ndarray:
        """Distance to the boundary, negative outside the domain."""
        pts = as_points(points, self.dim)
        if self.kind == DomainKind.INTERVAL:
            x = pts[..., 0]
            return np.minimum(x - self.a, self.b - x)
        return self.radius - np.linalg.norm(pts - np.asarray(self.center), axis=-1)

    def contains(self, points, closed: bool = True) -> np.ndarray:
        d = self.signed_distance(points)
        return d >= -BOUNDARY_TOL if closed else d > BOUNDARY_TOL

    def to_json(self) -> dict:
        if self.kind == DomainKind.INTERVAL:
            return {"kind": self.kind.value, "a": self.a, "b": self.b, "s": self.s}
        return {"kind": self.kind.value, "center": list(self.center), "radius": self.radius, "s": self.s}


def as_points(points, dim: int) -> np.ndarray:
    """Coerce scalars, sequences and arrays into an array of shape (..., dim)."""
    arr = np.asarray(points, dtype=float)
    if dim == 1:
        if arr.ndim == 0 or arr.shape[-1] != 1:
            arr = arr[..., None]
        return arr
    if arr.shape[-1] != 2:
        raise DomainError(f"expected planar points with last axis 2, got shape {arr.shape}")
    return arr


def boundary_distance(domain: Domain, x) -> np.ndarray:
    """
    δ(x) = dist(x, ℝ^N∖Ω) for points of the closed domain.

    Args:
        domain: The domain.
        x: A point or an array of points.

    Returns:
        δ at every point (a float for a single point).

    Raises:
        DomainError: If a point lies outside the closed domain.
    """
    d = domain.signed_distance(x)
    if np.any(d < -BOUNDARY_TOL):
        raise DomainError(f"point outside the closed domain (signed distance {float(np.min(d)):.3e})")
    d = np.maximum(d, 0.0)
    return float(d) if np.ndim(d) == 0 else d


def truncate(t, k: float):
    """Two-sided truncation t_k = sgn(t)·min(|t|, k)."""
    if not k > 0:
        raise ValueError(f"truncation level must be positive, got {k}")
    out = np.clip(t, -k, k)
    return float(out) if np.ndim(out) == 0 else out


def critical_exponent(N: int, s: float) -> float:
    """The fractional Sobolev exponent 2N/(N-2s)."""
    if not N > 2 * s:
        raise ValueError(f"critical exponent undefined for N={N}, s={s} (needs N > 2s)")
    return 2.0 * N / (N - 2.0 * s)
