"""
Bookkeeping of the Moser iteration: the elementary inequality, the exponent
ladder, the smallness level K₀ and the L^p cascade bound for ‖u‖∞.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple, Union

import numpy as np

from fraclab.error import FraclabError
from fraclab.geometry import GridFunction, critical_exponent, element_quadrature
from fraclab.geometry.quadrature import subdivided_triangle_rule

logger = logging.getLogger(__name__)

Number = Union[int, float, Fraction]

# the cascade stops once the exponent exceeds this value
CASCADE_MAX_EXPONENT = 1e3


def _truncated_abs(t: np.ndarray, k: float) -> np.ndarray:
    return np.minimum(np.abs(t), k)


def elementary_inequality_gap(a, b, r: float, k: float):
    """
    LHS − RHS of

        (a−b)(a|a|_k^{r−2} − b|b|_k^{r−2}) >= 4(r−1)/r² · (a|a|_k^{r/2−1} − b|b|_k^{r/2−1})²

    with |t|_k = min(|t|, k). Vectorized over a and b.

    Raises:
        ValueError: If r < 2 or k <= 0.
    """
    if not r >= 2:
        raise ValueError(f"r must be >= 2, got {r}")
    if not k > 0:
        raise ValueError(f"k must be positive, got {k}")
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    ak, bk = _truncated_abs(a, k), _truncated_abs(b, k)
    lhs = (a - b) * (a * ak ** (r - 2.0) - b * bk ** (r - 2.0))
    rhs = 4.0 * (r - 1.0) / r ** 2 * (a * ak ** (r / 2.0 - 1.0) - b * bk ** (r / 2.0 - 1.0)) ** 2
    gap = lhs - rhs
    return float(gap) if gap.ndim == 0 else gap


def _inequality_lhs(a, b, r, k):
    return (a - b) * (a * _truncated_abs(a, k) ** (r - 2.0) - b * _truncated_abs(b, k) ** (r - 2.0))


@dataclass(frozen=True)
class InequalityFuzz:
    """Worst scaled gap gap/max(1, |LHS|) over random samples."""
    count: int
    worst_scaled_gap: float
    witness: Tuple[float, float, float, float]
    passed: bool


def inequality_fuzz(count: int = 100_000, seed: int = 0, bound: float = 1e3, r_max: float = 50.0,
                    k_max: float = 1e3) -> InequalityFuzz:
    """
    Sample a, b in [−bound, bound], r in [2, r_max], k in (0, k_max] and
    check gap >= −1e−12·max(1, |LHS|).
    """
    rng = np.random.default_rng(seed)
    a = rng.uniform(-bound, bound, count)
    b = rng.uniform(-bound, bound, count)
    r = rng.uniform(2.0, r_max, count)
    k = k_max * (1.0 - rng.uniform(0.0, 1.0, count))
    ak, bk = _truncated_abs(a, k), _truncated_abs(b, k)
    lhs = (a - b) * (a * ak ** (r - 2.0) - b * bk ** (r - 2.0))
    rhs = 4.0 * (r - 1.0) / r ** 2 * (a * ak ** (r / 2.0 - 1.0) - b * bk ** (r / 2.0 - 1.0)) ** 2
    scaled = (lhs - rhs) / np.maximum(1.0, np.abs(lhs))
    i = int(np.argmin(scaled))
    return InequalityFuzz(count, float(scaled[i]), (float(a[i]), float(b[i]), float(r[i]), float(k[i])),
                          bool(scaled[i] >= -1e-12))


def _exact(x: Number) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    return Fraction(str(float(x)))


@dataclass(frozen=True)
class MoserLadder:
    """
    Exponents r_{n+1} = γ²r_n + 2 − q from r_0 = μ.

    ``exact`` holds the rational exponents; ``exponents`` their float values.
    """
    q: Fraction
    N: int
    s: Fraction
    gamma: float
    gamma_sq: Fraction
    mu0: Fraction
    start: Fraction
    exact: List[Fraction]
    diverges: bool

    @property
    def exponents(self) -> List[float]:
        return [float(r) for r in self.exact]

    @property
    def shape_consistent(self) -> bool:
        """Steps are positive above μ₀, zero at μ₀ and negative below, with the divergence flag agreeing."""
        steps = [b - a for a, b in zip(self.exact, self.exact[1:])]
        if self.start > self.mu0:
            shape = all(d > 0 for d in steps)
        elif self.start == self.mu0:
            shape = all(d == 0 for d in steps)
        else:
            shape = all(d < 0 for d in steps)
        return shape and self.diverges == (self.start > self.mu0 or self.q <= 2)

    def rows(self) -> List[dict]:
        return [{"n": n, "exponent": float(r)} for n, r in enumerate(self.exact)]


def moser_ladder(q: Number, N: int, s: Number, mu: Union[str, Number] = "subcritical", n_max: int = 10) -> MoserLadder:
    """
    Build the exponent ladder.

    Args:
        q: Growth exponent.
        N: Dimension.
        s: Order.
        mu: "subcritical" (μ = 2* + 2 − q), "critical" (μ = q(q+1)/2 + 2 − q)
            or an explicit start value.
        n_max: Number of recursion steps.

    Returns:
        The ladder; it diverges exactly when μ > μ₀ = (q−2)/(γ²−1), and
        always when q <= 2 (then 2 − q >= 0 and nothing holds the exponents
        back). Below μ₀ it decreases without bound.

    Raises:
        ValueError: If N <= 2s or q exceeds the critical exponent.
    """
    qq, ss = _exact(q), _exact(s)
    if not N > 2 * ss:
        raise ValueError(f"ladder undefined for N={N}, s={s} (needs N > 2s)")
    two_star = Fraction(2 * N) / (N - 2 * ss)
    if qq > two_star:
        raise ValueError(f"q={q} exceeds the critical exponent {float(two_star)}")
    gamma_sq = two_star / 2
    mu0 = (qq - 2) / (gamma_sq - 1)
    if mu == "subcritical":
        start = two_star + 2 - qq
    elif mu == "critical":
        start = qq * (qq + 1) / 2 + 2 - qq
    else:
        try:
            start = _exact(mu)
        except ValueError:
            raise ValueError(f"unknown ladder start {mu!r}") from None
    exact = [start]
    for _ in range(n_max):
        exact.append(gamma_sq * exact[-1] + 2 - qq)
    diverges = start > mu0 or qq <= 2
    return MoserLadder(qq, N, ss, float(np.sqrt(float(gamma_sq))), gamma_sq, mu0, start, exact, diverges)


@dataclass(frozen=True)
class LadderCheck:
    count: int
    mismatches: List[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.mismatches


def random_ladder_check(count: int = 1000, seed: int = 0, n_max: int = 30) -> LadderCheck:
    """
    Check over random rational (N, s, q, μ) that the ladder is constant at
    μ₀, strictly increasing above it and strictly decreasing below it.
    """
    rng = np.random.default_rng(seed)
    mismatches = []
    for i in range(count):
        N = int(rng.integers(1, 5))
        s = Fraction(int(rng.integers(1, 8)), 8)
        if not N > 2 * s:
            s = s / 2
        two_star = Fraction(2 * N) / (N - 2 * s)
        q = 2 + (two_star - 2) * Fraction(int(rng.integers(1, 101)), 100)
        mu0 = (q - 2) / (two_star / 2 - 1)
        offset = Fraction(int(rng.integers(-50, 51)), 10)
        ladder = moser_ladder(q, N, s, mu0 + offset, n_max)
        r = ladder.exact
        steps = [b - a for a, b in zip(r, r[1:])]
        if offset > 0:
            ok = ladder.diverges and all(d > 0 for d in steps)
        elif offset == 0:
            ok = not ladder.diverges and all(d == 0 for d in steps)
        else:
            ok = not ladder.diverges and all(d < 0 for d in steps)
        if not ok:
            mismatches.append({"index": i, "N": N, "s": str(s), "q": str(q), "mu": str(mu0 + offset)})
    if mismatches:
        logger.warning(f"{len(mismatches)} ladder mismatches out of {count}")
    return LadderCheck(count, mismatches)


def _superlevel_integral(vals: np.ndarray, weights: np.ndarray, q: float, level: float) -> float:
    return float(np.sum(np.where(vals > level, weights * vals ** q, 0.0)))


def tail_smallness_level(u: GridFunction, q: float, sigma: float) -> float:
    """
    Smallest K₀ among 0 and the nodal values of |u| with
    (∫_{|u|>K₀} |u|^q)^{1−2/q} <= sigma.

    Raises:
        ValueError: If q <= 2 or sigma <= 0.
    """
    if not q > 2:
        raise ValueError(f"q must exceed 2, got {q}")
    if not sigma > 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    rule = element_quadrature(u.mesh, 4)
    vals = np.abs(rule.interpolate(u.values))
    candidates = np.concatenate([[0.0], np.unique(np.abs(u.values))])

    def small(level: float) -> bool:
        return _superlevel_integral(vals, rule.weights, q, level) ** (1.0 - 2.0 / q) <= sigma

    lo, hi = 0, len(candidates) - 1
    if small(candidates[0]):
        return 0.0
    # small() is monotone in the level and holds at max |u|
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if small(candidates[mid]):
            hi = mid
        else:
            lo = mid
    return float(candidates[hi])


def _segment_power_integrals(u: GridFunction, p: float) -> Tuple[np.ndarray, float]:
    """Exact ∫|u|^p per segment of the scaled function u/‖u‖∞, and the scale."""
    scale = float(np.max(np.abs(u.values)))
    v = u.values[u.mesh.elements] / scale
    length = u.mesh.element_measures
    x, y = np.abs(v[:, 0]), np.abs(v[:, 1])
    same = v[:, 0] * v[:, 1] >= 0
    hi, lo = np.maximum(x, y), np.minimum(x, y)
    with np.errstate(divide="ignore", invalid="ignore"):
        mono = np.where(hi - lo > 1e-12, (hi ** (p + 1) - lo ** (p + 1)) / ((p + 1) * (hi - lo)), hi ** p)
        cross = np.where(x + y > 0, (x ** (p + 1) + y ** (p + 1)) / ((p + 1) * (x + y)), 0.0)
    return length * np.where(same, mono, cross), scale


def _lp_piecewise(u: GridFunction, p: float) -> float:
    if not np.any(u.values):
        return 0.0
    if u.mesh.dim == 1:
        per, scale = _segment_power_integrals(u, p)
        return scale * float(per.sum()) ** (1.0 / p)
    bary, w = subdivided_triangle_rule(4, 3)
    vals = np.abs(u.values[u.mesh.elements] @ bary.T)
    scale = float(vals.max())
    total = float(np.sum(u.mesh.element_measures[:, None] * w[None, :] * (vals / scale) ** p))
    return scale * total ** (1.0 / p)


def _inverse_factor(u: GridFunction, p: float) -> float:
    smallest = float(u.mesh.element_measures.min())
    c = p + 1.0 if u.mesh.dim == 1 else (p + 1.0) * (p + 2.0) / 2.0
    return (c / smallest) ** (1.0 / p)


@dataclass(frozen=True)
class CascadeResult:
    """
    Rungs (p, ‖u‖_p) of the cascade and the closed bound on ‖u‖∞.
    """
    bound: float
    sup: float
    rungs: List[Tuple[float, float]]

    @property
    def passed(self) -> bool:
        return self.bound >= self.sup * (1.0 - 1e-9)

    @property
    def factor(self) -> float:
        return self.bound / self.sup if self.sup > 0 else 1.0


def sup_bound_cascade(u: GridFunction, q: float, N: Optional[int] = None, s: Optional[float] = None,
                      max_exponent: float = CASCADE_MAX_EXPONENT) -> CascadeResult:
    """
    Evaluate ‖u‖_{p_n} along p_n = p_0·γⁿ until p_n > max_exponent and close
    the last rung with the inverse estimate of piecewise-linear elements.

    p_0 = 2* and γ = √(2*/2) when N > 2s; otherwise every exponent embeds and
    the cascade starts at max(q, 2) with γ = √2.

    Raises:
        FraclabError: If a rung norm is not finite.
    """
    N = u.mesh.dim if N is None else N
    s = u.mesh.domain.s if s is None else s
    sup = float(np.max(np.abs(u.values)))
    try:
        p = critical_exponent(N, s)
        gamma = np.sqrt(p / 2.0)
    except ValueError:
        p, gamma = max(float(q), 2.0), np.sqrt(2.0)
    rungs: List[Tuple[float, float]] = []
    n = 0
    while True:
        value = _lp_piecewise(u, p)
        if not np.isfinite(value):
            logger.error(f"Cascade rung {n} (p={p:.4g}) is not finite")
            raise FraclabError(f"non-finite L^{p:.4g} norm at cascade rung {n}")
        rungs.append((float(p), float(value)))
        if p > max_exponent:
            break
        p *= gamma
        n += 1
    bound = rungs[-1][1] * _inverse_factor(u, rungs[-1][0]) if sup > 0 else 0.0
    logger.debug(f"Cascade: {len(rungs)} rungs, bound {bound:.6g}, sup {sup:.6g}")
    return CascadeResult(float(bound), sup, rungs)
