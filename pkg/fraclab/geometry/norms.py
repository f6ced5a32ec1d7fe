"""
L^p and boundary-weighted norms of grid functions.

Weighted quantities divide by δ^s and are therefore evaluated at interior
nodes only.
"""

from typing import Optional, Tuple

import numpy as np
from scipy.spatial.distance import pdist

from fraclab.geometry.functions import GridFunction
from fraclab.geometry.quadrature import element_quadrature

# Gauss points per segment (1D) or triangle-rule degree (2D) for L^p integrals.
LP_RULE = 2


def _lp(u: GridFunction, p: float, order: int) -> float:
    rule = element_quadrature(u.mesh, order)
    vals = np.abs(rule.interpolate(u.values))
    scale = float(vals.max()) if vals.size else 0.0
    if scale == 0.0:
        return 0.0
    # scaling keeps |u|^p finite for large p
    return scale * rule.integrate((vals / scale) ** p) ** (1.0 / p)


def lp_norm(u: GridFunction, p: float) -> float:
    """
    (∫_Ω |u|^p)^{1/p} by the composite two-point rule; p = inf gives max nodal |u|.

    Raises:
        ValueError: If p < 1.
    """
    if not p >= 1:
        raise ValueError(f"p must be >= 1, got {p}")
    if np.isinf(p):
        return float(np.max(np.abs(u.values)))
    return _lp(u, float(p), LP_RULE)


def lp_norm_estimate(u: GridFunction, p: float) -> Tuple[float, float]:
    """The two-point L^p norm together with its gap to a higher-order rule."""
    value = lp_norm(u, p)
    if np.isinf(p):
        return value, 0.0
    return value, abs(value - _lp(u, float(p), 4))


def weighted_quotient(u: GridFunction) -> np.ndarray:
    """u/δ^s at the interior nodes."""
    mesh = u.mesh
    return u.values[mesh.interior] / mesh.delta[mesh.interior] ** mesh.domain.s


def weighted_sup_norm(u: GridFunction) -> float:
    """
    ‖u/δ^s‖_∞ over interior nodes.

    Raises:
        NotInWeightedSpaceError: If u does not vanish on the boundary.
    """
    u.require_zero_boundary()
    q = weighted_quotient(u)
    return float(np.max(np.abs(q))) if q.size else 0.0


def default_holder_exponent(s: float) -> float:
    return min(s, 1.0 - s) / 2.0


def weighted_holder_norm(u: GridFunction, alpha: Optional[float] = None) -> float:
    """
    Weighted sup norm plus the discrete α-Hölder seminorm of u/δ^s over
    pairs of distinct interior nodes.
    """
    if alpha is None:
        alpha = default_holder_exponent(u.mesh.domain.s)
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0,1), got {alpha}")
    sup = weighted_sup_norm(u)
    q = weighted_quotient(u)
    if q.size < 2:
        return sup
    pts = u.mesh.nodes[u.mesh.interior]
    dq = pdist(q[:, None], "cityblock")
    dx = pdist(pts)
    return sup + float(np.max(dq / dx ** alpha))
