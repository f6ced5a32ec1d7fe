"""
Nonlinearities f(x, t) with their primitive F(x, t) = ∫_0^t f(x, τ) dτ.

Callables take points x of shape t.shape + (N,) and values t, and are
vectorized over both. Every truncation used by the solvers is a clamp of
the t-argument into [lower(x), upper(x)], so a single construction covers
the level, order and sign variants.
"""

import logging
from dataclasses import dataclass, replace
from typing import Any, Callable, Dict, Optional

import numpy as np
from scipy import integrate

from fraclab.error import GrowthViolationError
from fraclab.geometry import Domain, GridFunction, critical_exponent

logger = logging.getLogger(__name__)

Field = Callable[[np.ndarray, np.ndarray], np.ndarray]


@dataclass(frozen=True)
class Nonlinearity:
    """
    f with its primitive F and growth data |f(x,t)| <= a(1 + |t|^{q-1}).

    Attributes:
        monotone: t ↦ f(x,t) is nondecreasing.
        sign: f(x,t)·t >= 0.
        autonomous: f does not depend on x.
        df: ∂f/∂t if known; a central difference is used otherwise.
    """
    f: Field
    F: Field
    a: float
    q: float
    monotone: bool = False
    sign: bool = False
    autonomous: bool = True
    df: Optional[Field] = None
    name: str = "custom"

    def __call__(self, x, t) -> np.ndarray:
        return self.f(x, t)

    def derivative(self, x, t) -> np.ndarray:
        if self.df is not None:
            return self.df(x, t)
        t = np.asarray(t, dtype=float)
        step = 1e-6 * (1.0 + np.abs(t))
        return (self.f(x, t + step) - self.f(x, t - step)) / (2.0 * step)


def _const(value: float) -> Field:
    return lambda x, t: np.full(np.shape(t), value, dtype=float)


def zero() -> Nonlinearity:
    return Nonlinearity(f=_const(0.0), F=_const(0.0), df=_const(0.0), a=1.0, q=1.0,
                        monotone=True, sign=True, name="zero")


def constant(value: float = 1.0) -> Nonlinearity:
    return Nonlinearity(
        f=_const(value), F=lambda x, t: value * np.asarray(t, dtype=float), df=_const(0.0),
        a=max(abs(value), 1e-300), q=1.0, monotone=True, sign=value == 0.0, name=f"constant({value:g})",
    )


def linear(lam: float) -> Nonlinearity:
    return Nonlinearity(
        f=lambda x, t: lam * np.asarray(t, dtype=float),
        F=lambda x, t: 0.5 * lam * np.asarray(t, dtype=float) ** 2,
        df=_const(lam), a=max(abs(lam), 1e-300), q=2.0,
        monotone=lam >= 0, sign=lam >= 0, name=f"linear({lam:g})",
    )


def affine(lam: float, c: float) -> Nonlinearity:
    """f(t) = λt + c."""
    return Nonlinearity(
        f=lambda x, t: lam * np.asarray(t, dtype=float) + c,
        F=lambda x, t: 0.5 * lam * np.asarray(t, dtype=float) ** 2 + c * np.asarray(t, dtype=float),
        df=_const(lam), a=max(abs(lam), abs(c)), q=2.0,
        monotone=lam >= 0, sign=False, name=f"affine({lam:g},{c:g})",
    )


def power(p: float, c: float = 1.0) -> Nonlinearity:
    """f(t) = c|t|^{p−2}t, growth exponent q = p."""
    if p < 2:
        raise ValueError(f"power nonlinearity needs p >= 2, got {p}")
    return Nonlinearity(
        f=lambda x, t: c * np.abs(t) ** (p - 2.0) * np.asarray(t, dtype=float),
        F=lambda x, t: c * np.abs(t) ** p / p,
        df=lambda x, t: c * (p - 1.0) * np.abs(t) ** (p - 2.0),
        a=abs(c), q=float(p), monotone=c >= 0, sign=c >= 0, name=f"power({p:g},{c:g})",
    )


def cubic() -> Nonlinearity:
    return replace(power(4.0), name="cubic")


def arctan(c: float = 1.0) -> Nonlinearity:
    """f(t) = c·arctan(t): bounded, odd, monotone for c > 0."""
    return Nonlinearity(
        f=lambda x, t: c * np.arctan(t),
        F=lambda x, t: c * (np.asarray(t, dtype=float) * np.arctan(t) - 0.5 * np.log1p(np.asarray(t, dtype=float) ** 2)),
        df=lambda x, t: c / (1.0 + np.asarray(t, dtype=float) ** 2),
        a=abs(c) * np.pi / 2, q=1.0, monotone=c >= 0, sign=c >= 0, name=f"arctan({c:g})",
    )


def arctan_plus_one() -> Nonlinearity:
    """f(t) = arctan(t) + 1."""
    base = arctan(1.0)
    return Nonlinearity(
        f=lambda x, t: np.arctan(t) + 1.0,
        F=lambda x, t: base.F(x, t) + np.asarray(t, dtype=float),
        df=base.df, a=np.pi / 2 + 1.0, q=1.0, monotone=True, sign=False, name="arctan_plus_one",
    )


def exponential() -> Nonlinearity:
    """f(t) = e^t, declared with (a, q) = (1, 2), which it violates."""
    return Nonlinearity(
        f=lambda x, t: np.exp(t), F=lambda x, t: np.expm1(t), df=lambda x, t: np.exp(t),
        a=1.0, q=2.0, monotone=True, sign=False, name="exponential",
    )


class _NodalField:
    """Evaluates a grid function at quadrature points, remembering the last point set."""

    def __init__(self, g: GridFunction):
        self.g = g
        self._points = None
        self._values = None

    def __call__(self, x: np.ndarray) -> np.ndarray:
        if x is not self._points:
            self._values = self.g.evaluate(x)
            self._points = x
        return self._values


def from_grid(g: GridFunction) -> Nonlinearity:
    """Data term f(x, t) = g(x), independent of t."""
    field = _NodalField(g)
    bound = float(np.max(np.abs(g.values))) if g.values.size else 0.0
    return Nonlinearity(
        f=lambda x, t: np.broadcast_to(field(x), np.shape(t)).astype(float),
        F=lambda x, t: field(x) * np.asarray(t, dtype=float),
        df=_const(0.0), a=max(bound, 1e-300), q=1.0, monotone=True,
        sign=bool(np.all(g.values == 0)), autonomous=False, name="data",
    )


_FACTORIES: Dict[str, Callable[..., Nonlinearity]] = {
    "zero": zero,
    "constant": constant,
    "linear": linear,
    "affine": affine,
    "power": power,
    "cubic": cubic,
    "arctan": arctan,
    "arctan_plus_one": arctan_plus_one,
    "exponential": exponential,
}


def nonlinearity_names():
    return sorted(_FACTORIES)


def nonlinearity_from_spec(name: str, params: Optional[Dict[str, Any]] = None) -> Nonlinearity:
    """Build a named nonlinearity; ``params`` are the factory's keyword arguments."""
    try:
        factory = _FACTORIES[name]
    except KeyError:
        raise ValueError(f"unknown nonlinearity '{name}', valid: {', '.join(nonlinearity_names())}") from None
    return factory(**(params or {}))


def _clamped(nl: Nonlinearity, lower: Callable, upper: Callable, a: float, name: str, autonomous: bool) -> Nonlinearity:
    # G(t) = F(c) + f(c)(t − c) with c = clamp(t) is a primitive of f(clamp(t)); subtract G(0)
    def clamp(x, t):
        return np.clip(np.asarray(t, dtype=float), lower(x), upper(x))

    def f(x, t):
        return nl.f(x, clamp(x, t))

    def G(x, t):
        c = clamp(x, t)
        return nl.F(x, c) + nl.f(x, c) * (np.asarray(t, dtype=float) - c)

    def F(x, t):
        return G(x, t) - G(x, np.zeros(np.shape(t)))

    def df(x, t):
        t = np.asarray(t, dtype=float)
        lo, hi = lower(x), upper(x)
        inside = (t > lo) & (t < hi)
        return np.where(inside, nl.derivative(x, clamp(x, t)), 0.0)

    return Nonlinearity(f=f, F=F, df=df, a=a, q=1.0, monotone=nl.monotone,
                        sign=nl.sign, autonomous=autonomous, name=name)


def truncate_nonlinearity_level(nl: Nonlinearity, k: float) -> Nonlinearity:
    """f_k(x,t) = f(x, t_k) with bounded growth a(1 + k^{q−1})."""
    if not k > 0:
        raise ValueError(f"truncation level must be positive, got {k}")
    return _clamped(nl, lambda x: -k, lambda x: k, nl.a * (1.0 + k ** (nl.q - 1.0)),
                    f"{nl.name}|level({k:g})", nl.autonomous)


def truncate_nonlinearity_sign(nl: Nonlinearity, sign: int) -> Nonlinearity:
    """f₊(x,t) = f(x, t₊) for sign = +1, f₋(x,t) = f(x, −t₋) for sign = −1."""
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    if sign > 0:
        return _clamped(nl, lambda x: 0.0, lambda x: np.inf, nl.a, f"{nl.name}|+", nl.autonomous)
    return _clamped(nl, lambda x: -np.inf, lambda x: 0.0, nl.a, f"{nl.name}|-", nl.autonomous)


def clamp_between(nl: Nonlinearity, lower: GridFunction, upper: GridFunction) -> Nonlinearity:
    """f(x, clamp(t, lower(x), upper(x))) without the order check."""
    lo, hi = _NodalField(lower), _NodalField(upper)
    bound = max(float(np.max(np.abs(lower.values))), float(np.max(np.abs(upper.values))))
    return _clamped(nl, lo, hi, nl.a * (1.0 + bound ** max(nl.q - 1.0, 0.0)),
                    f"{nl.name}|order", autonomous=False)


@dataclass(frozen=True)
class GrowthReport:
    """Outcome of :func:`growth_check`."""
    passed: bool
    max_violation: float
    witness: Optional[tuple]
    primitive_error: float
    q: float
    critical_exponent: float
    subcritical: bool
    critical: bool
    samples: int


def growth_check(
    nl: Nonlinearity,
    samples: int = 2000,
    seed: int = 0,
    domain: Optional[Domain] = None,
    N: Optional[int] = None,
    s: Optional[float] = None,
    t_max: float = 50.0,
    raise_on_failure: bool = False,
) -> GrowthReport:
    """
    Fuzz |f(x,t)| <= a(1 + |t|^{q−1}) and F against quadrature of f.

    ``t`` is drawn on [−T, T] with T = t_max·(1 + seed mod 4), half uniformly
    and half log-uniformly in magnitude. The critical exponent comes from
    ``domain`` or from explicit N and s.

    Raises:
        GrowthViolationError: On failure when ``raise_on_failure`` is set.
    """
    rng = np.random.default_rng(seed)
    if domain is not None:
        N, s = domain.dim, domain.s
    N = N or 1
    T = t_max * (1 + seed % 4)
    half = samples // 2
    mags = np.concatenate([rng.uniform(0.0, T, half), np.exp(rng.uniform(np.log(1e-3), np.log(T), samples - half))])
    t = mags * rng.choice([-1.0, 1.0], samples)
    if domain is None:
        x = np.zeros((samples, N))
    elif domain.dim == 1:
        x = rng.uniform(domain.a, domain.b, (samples, 1))
    else:
        rho = domain.radius * np.sqrt(rng.uniform(0, 1, samples))
        phi = rng.uniform(0, 2 * np.pi, samples)
        x = np.asarray(domain.center) + np.stack([rho * np.cos(phi), rho * np.sin(phi)], axis=1)

    with np.errstate(over="ignore", invalid="ignore"):
        values = np.abs(nl.f(x, t))
        bound = nl.a * (1.0 + np.abs(t) ** (nl.q - 1.0))
        violation = np.where(np.isfinite(values), values - bound, np.inf)
    tol = 1e-12 * np.maximum(1.0, bound)
    worst = int(np.argmax(violation - tol))
    passed = bool(violation[worst] <= tol[worst])
    witness = None if passed else (x[worst].tolist(), float(t[worst]))

    prim_err = 0.0
    for i in range(min(samples, 16)):
        ti = float(np.clip(t[i], -5.0, 5.0))
        xi = x[i]
        exact, _ = integrate.quad(lambda tau: float(nl.f(xi[None, :], np.array([tau]))[0]), 0.0, ti)
        prim_err = max(prim_err, abs(float(nl.F(xi[None, :], np.array([ti]))[0]) - exact))

    try:
        crit = critical_exponent(N, s) if s is not None else np.inf
    except ValueError:
        crit = np.inf
    critical = bool(np.isfinite(crit) and abs(nl.q - crit) <= 1e-12 * crit)
    subcritical = bool(nl.q < crit and not critical)
    if nl.q > crit * (1 + 1e-12):
        passed = False
    report = GrowthReport(passed, float(violation[worst]), witness, prim_err, nl.q, float(crit),
                          subcritical, critical, samples)
    if not passed:
        logger.warning(f"Growth check failed for {nl.name}: violation {report.max_violation:.3e} at {witness}")
        if raise_on_failure:
            raise GrowthViolationError(f"growth bound violated by {nl.name}", witness=witness)
    return report
