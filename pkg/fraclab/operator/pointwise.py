"""
Pointwise evaluation of the operator and the nonlocal Tail.
"""

import logging
from typing import Callable, NamedTuple, Optional, Sequence, Union

import numpy as np

from fraclab.geometry import GridFunction
from fraclab.geometry.quadrature import adaptive_integral, gauss_legendre, subdivided_triangle_rule
from fraclab.operator.kernel import KernelSpec

logger = logging.getLogger(__name__)

ANGULAR_POINTS = 128


class FlapEstimate(NamedTuple):
    value: float
    error: float


def _values(u: Callable, pts: np.ndarray) -> np.ndarray:
    return np.atleast_1d(np.asarray(u(pts), dtype=float))


def _angular_average(u: Callable, x: np.ndarray, r: float, n: int = ANGULAR_POINTS) -> float:
    """∫_0^{2π} u(x + rθ) dθ by the periodic trapezoid rule."""
    theta = 2.0 * np.pi * np.arange(n) / n
    pts = x + r * np.stack([np.cos(theta), np.sin(theta)], axis=1)
    return float(np.sum(_values(u, pts))) * 2.0 * np.pi / n


def _flap_1d(u, x: float, s: float, eps: float, breakpoints, tol: float) -> FlapEstimate:
    ux = float(_values(u, np.array([x]))[0])
    eta = max(eps, 1e-3)
    vals = _values(u, np.array([x - eta, x, x + eta]))
    second = (vals[0] - 2.0 * vals[1] + vals[2]) / eta ** 2
    inner = -second * eps ** (2.0 - 2.0 * s) / (2.0 - 2.0 * s)

    def integrand(r):
        pair = _values(u, np.array([x + r, x - r]))
        return (2.0 * ux - pair[0] - pair[1]) * r ** (-1.0 - 2.0 * s)

    kinks = sorted({abs(p - x) for p in (breakpoints or ()) if abs(p - x) > eps})
    split = max([1.0, 2.0 * eps] + [2.0 * k for k in kinks])
    near, err_near = adaptive_integral(integrand, eps, split, points=kinks, tol=tol)
    far, err_far = adaptive_integral(integrand, split, np.inf, tol=tol)
    return FlapEstimate(inner + near + far, err_near + err_far)


def _flap_2d(u, x: np.ndarray, s: float, eps: float, tol: float) -> FlapEstimate:
    ux = float(_values(u, x[None, :])[0])
    eta = max(eps, 1e-3)
    e1, e2 = np.array([eta, 0.0]), np.array([0.0, eta])
    stencil = _values(u, np.stack([x + e1, x - e1, x + e2, x - e2]))
    laplacian = (stencil.sum() - 4.0 * ux) / eta ** 2
    inner = -0.5 * np.pi * laplacian * eps ** (2.0 - 2.0 * s) / (2.0 - 2.0 * s)

    def integrand(r):
        return (2.0 * np.pi * ux - _angular_average(u, x, r)) * r ** (-1.0 - 2.0 * s)

    split = max(1.0, 2.0 * eps)
    near, err_near = adaptive_integral(integrand, eps, split, tol=tol)
    far, err_far = adaptive_integral(integrand, split, np.inf, tol=tol)
    return FlapEstimate(inner + near + far, err_near + err_far)


def pointwise_flap(
    u: Callable[[np.ndarray], np.ndarray],
    x,
    kernel: KernelSpec,
    eps: float = 1e-3,
    breakpoints: Optional[Sequence[float]] = None,
    tol: float = 1e-10,
) -> FlapEstimate:
    """
    Principal-value evaluation of the fractional Laplacian of ``u`` at ``x``.

    The ball B_eps(x) is replaced by the second-order Taylor term; the rest
    is integrated adaptively. The returned error combines the quadrature
    bounds with the change observed when eps is doubled.

    Args:
        u: Callable on all of ℝ^N, receiving points of shape (n,) in 1D or (n, 2) in 2D.
        x: Evaluation point.
        kernel: Kernel (dimension, order and normalization).
        eps: Radius of the excised ball.
        breakpoints: 1D positions where u has kinks (support ends).
        tol: Quadrature tolerance.

    Raises:
        QuadratureError: If the adaptive quadrature fails to converge.
    """
    s = kernel.s
    if kernel.N == 1:
        xx = float(np.ravel(x)[0])
        fine = _flap_1d(u, xx, s, eps, breakpoints, tol)
        coarse = _flap_1d(u, xx, s, 2.0 * eps, breakpoints, tol)
    else:
        xx = np.asarray(x, dtype=float).reshape(2)
        fine = _flap_2d(u, xx, s, eps, tol)
        coarse = _flap_2d(u, xx, s, 2.0 * eps, tol)
    C = kernel.normalization
    return FlapEstimate(C * fine.value, C * (fine.error + abs(fine.value - coarse.value)))


def _grid_tail(u: GridFunction, x0: np.ndarray, r: float, s: float, transform) -> float:
    mesh = u.mesh
    if mesh.dim == 1:
        c = float(x0[0])
        t, w = gauss_legendre(8)
        ends = mesh.nodes[mesh.elements, 0]
        total = 0.0
        for lo, hi in ((ends[:, 0], np.minimum(ends[:, 1], c - r)), (np.maximum(ends[:, 0], c + r), ends[:, 1])):
            length = np.maximum(hi - lo, 0.0)
            keep = length > 0
            if not np.any(keep):
                continue
            pts = lo[keep, None] + length[keep, None] * t
            vals = np.abs(transform(u.evaluate(pts)))
            total += float(np.sum(vals * np.abs(pts - c) ** (-1.0 - 2.0 * s) * length[keep, None] * w))
        return total
    bary, w = subdivided_triangle_rule(4, 2)
    corners = mesh.nodes[mesh.elements]
    pts = np.einsum("qa,mad->mqd", bary, corners)
    weights = mesh.element_measures[:, None] * w[None, :]
    dist = np.linalg.norm(pts - x0, axis=-1)
    outside = dist >= r
    vals = np.abs(transform(GridFunction.evaluate(u, pts)))
    with np.errstate(divide="ignore"):
        kern = np.where(outside, dist, 1.0) ** (-2.0 - 2.0 * s)
    return float(np.sum(np.where(outside, vals * kern * weights, 0.0)))


def tail(
    u: Union[GridFunction, Callable[[np.ndarray], np.ndarray]],
    x0,
    r: float,
    kernel: KernelSpec,
    transform: Optional[Callable[[np.ndarray], np.ndarray]] = None,
    tol: float = 1e-10,
) -> float:
    """
    Tail(u; x0, r) = r^{2s}·∫_{ℝ^N∖B_r(x0)} |u(x)|·|x−x0|^{−(N+2s)} dx.

    Grid functions vanish outside Ω, so their tail is an integral over the
    mesh; callables are integrated radially to infinity. ``transform`` is
    applied to the values of u before taking absolute values, e.g.
    ``lambda v: np.maximum(v - k, 0)`` for the tail of (u−k)_+.

    Raises:
        ValueError: If r <= 0.
        QuadratureError: If the radial quadrature of a callable fails.
    """
    if not r > 0:
        raise ValueError(f"radius must be positive, got {r}")
    s = kernel.s
    transform = transform or (lambda v: v)
    center = np.atleast_1d(np.asarray(x0, dtype=float))
    if isinstance(u, GridFunction):
        integral = _grid_tail(u, center, r, s, transform)
    elif kernel.N == 1:
        c = float(center[0])

        def integrand(rho):
            vals = np.abs(transform(_values(u, np.array([c + rho, c - rho]))))
            return float(vals.sum()) * rho ** (-1.0 - 2.0 * s)

        integral, _ = adaptive_integral(integrand, r, np.inf, tol=tol)
    else:
        def integrand(rho):
            return _angular_average(lambda p: np.abs(transform(_values(u, p))), center, rho) * rho ** (-1.0 - 2.0 * s)

        integral, _ = adaptive_integral(integrand, r, np.inf, tol=tol)
    return r ** (2.0 * s) * integral
