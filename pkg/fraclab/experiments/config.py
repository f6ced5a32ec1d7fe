"""
Experiment configuration, parsed from JSON and validated before any
computation starts.
"""

import json
from pathlib import Path
from typing import Any, Dict, List, Literal, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from fraclab.error import ConfigError
from fraclab.geometry import Domain
from fraclab.variational import Nonlinearity, nonlinearity_from_spec, nonlinearity_names

EXPERIMENTS: Dict[str, str] = {
    "torsion-convergence": "Solve (-Δ)^s u = 1 and compare with the closed-form torsion function under refinement.",
    "eigen-spectrum": "Smallest eigenpairs of the discrete operator per resolution.",
    "wmp-sweep": "Weak and strong maximum principle over random nonnegative right-hand sides.",
    "hopf-study": "Hopf quotient u/δ^s of the torsion solution under refinement.",
    "barrier-check": "Barrier constant c with φ >= c(R-|x|)^s for several orders s.",
    "regularity-sweep": "Weighted Hölder norm of solutions over random unit-sup data.",
    "moser-ladder": "Moser exponent ladder, random divergence check and elementary inequality fuzz.",
    "talenti-blowup": "Talenti constant fit and sup versus critical norm as ε shrinks.",
    "subsuper-demo": "Solution between the subsolution 0 and a multiple of the torsion function.",
    "ball-minimizer-probe": "Ball-constrained minimizers with multipliers, and X-ball probes of C0_δ-box minimizers.",
    "sign-truncation-minimizers": "Minimizers of the energies with f₊ and f₋ and their sign and Hopf checks.",
}


class DomainSpec(BaseModel):
    """Geometry; the order s comes from the enclosing config."""
    model_config = ConfigDict(extra="forbid", frozen=True)

    kind: Literal["interval", "disk"] = "interval"
    a: float = -1.0
    b: float = 1.0
    center: Tuple[float, float] = (0.0, 0.0)
    radius: float = 1.0

    @model_validator(mode="after")
    def check_geometry(self) -> "DomainSpec":
        if self.kind == "interval" and not self.a < self.b:
            raise ValueError("interval needs a < b")
        if self.kind == "disk" and not self.radius > 0:
            raise ValueError("disk radius must be positive")
        return self

    def build(self, s: float) -> Domain:
        if self.kind == "interval":
            return Domain.interval(self.a, self.b, s)
        return Domain.disk(self.center, self.radius, s)


class NonlinearitySpec(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    name: str = "constant"
    params: Dict[str, float] = Field(default_factory=lambda: {"value": 1.0})

    @field_validator("name")
    @classmethod
    def known_name(cls, value: str) -> str:
        if value not in nonlinearity_names():
            raise ValueError(f"unknown nonlinearity '{value}', valid: {', '.join(nonlinearity_names())}")
        return value

    def build(self) -> Nonlinearity:
        return nonlinearity_from_spec(self.name, self.params)


class Tolerances(BaseModel):
    """
    Thresholds behind the pass/fail checks of the studies.

    Relative quantities unless the name says otherwise; the active values are
    echoed into the run manifest with the rest of the configuration.
    """
    model_config = ConfigDict(extra="forbid", frozen=True)

    center_rel: float = Field(default=0.02, ge=0)
    energy_identity: float = Field(default=1e-8, ge=0)
    eigen_residual: float = Field(default=1e-8, ge=0)
    lambda1_range: Tuple[float, float] = (1.0, 1.3)
    wmp_violation: float = Field(default=1e-9, ge=0)
    hopf_stability: float = Field(default=0.25, ge=0)
    hopf_oracle: float = Field(default=0.05, ge=0)
    barrier_ratio: Tuple[float, float] = (0.5, 2.0)
    regularity_spread: float = Field(default=0.25, ge=0)
    inequality_equality: float = Field(default=1e-12, ge=0)
    gamma_spread: float = Field(default=0.01, ge=0)
    critical_norm_spread: float = Field(default=1e-4, ge=0)
    critical_norm_slack: float = Field(default=1e-9, ge=0)
    subsuper_residual: float = Field(default=1e-8, ge=0)
    multiplier: float = Field(default=1e-3, ge=0)
    alignment_cosine: float = Field(default=0.999, ge=0, le=1)
    sign_zero: float = Field(default=1e-10, ge=0)

    @field_validator("lambda1_range", "barrier_ratio")
    @classmethod
    def ordered_range(cls, value: Tuple[float, float]) -> Tuple[float, float]:
        if not value[0] <= value[1]:
            raise ValueError("range needs low <= high")
        return value


class ExperimentConfig(BaseModel):
    """
    A named study with its numerical setting.

    ``params`` holds study-specific knobs (instance counts, radii, ...);
    every study documents the keys it reads and their defaults. ``tolerances``
    sets the thresholds its checks compare against.
    """
    model_config = ConfigDict(extra="forbid", frozen=True)

    experiment: str
    s: float = 0.5
    resolutions: List[int] = Field(default_factory=lambda: [32, 64, 128])
    seed: int = Field(default=0, ge=0)
    domain: DomainSpec = Field(default_factory=DomainSpec)
    nonlinearity: NonlinearitySpec = Field(default_factory=NonlinearitySpec)
    params: Dict[str, Any] = Field(default_factory=dict)
    output_dir: str = "results"
    jobs: int = Field(default=1, ge=1)
    tolerances: Tolerances = Field(default_factory=Tolerances)

    @field_validator("experiment")
    @classmethod
    def known_experiment(cls, value: str) -> str:
        if value not in EXPERIMENTS:
            raise ValueError(f"unknown experiment '{value}', valid: {', '.join(EXPERIMENTS)}")
        return value

    @field_validator("s")
    @classmethod
    def order_range(cls, value: float) -> float:
        if not 0.0 < value < 1.0:
            raise ValueError("s must lie in (0,1)")
        return value

    @field_validator("resolutions")
    @classmethod
    def resolution_list(cls, value: List[int]) -> List[int]:
        if not value:
            raise ValueError("at least one resolution is required")
        if any(n < 2 for n in value):
            raise ValueError("resolutions must be integers >= 2")
        return value

    def build_domain(self) -> Domain:
        return self.domain.build(self.s)

    def param(self, key: str, default: Any) -> Any:
        return self.params.get(key, default)


def _format_errors(exc: ValidationError) -> Tuple[str, List[str]]:
    lines, paths = [], []
    for err in exc.errors():
        path = ".".join(str(part) for part in err["loc"]) or "<root>"
        paths.append(path)
        lines.append(f"{path}: {err['msg']}")
    return "\n".join(lines), paths


def parse_config(text: Union[str, bytes, Dict[str, Any]], **overrides: Any) -> ExperimentConfig:
    """
    Parse and validate a JSON configuration.

    Keyword overrides with a value other than None replace top-level fields
    before validation.

    Raises:
        ConfigError: On malformed JSON or any schema violation; the message
            lists every error as ``path: message``.
    """
    if isinstance(text, dict):
        data = dict(text)
    else:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"<root>: malformed JSON ({exc})", paths=["<root>"]) from exc
    if not isinstance(data, dict):
        raise ConfigError("<root>: configuration must be a JSON object", paths=["<root>"])
    data.update({k: v for k, v in overrides.items() if v is not None})
    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as exc:
        message, paths = _format_errors(exc)
        raise ConfigError(message, paths=paths) from exc


def load_config(path: Union[str, Path], **overrides: Any) -> ExperimentConfig:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"<root>: cannot read {path}: {exc}", paths=["<root>"]) from exc
    return parse_config(text, **overrides)
