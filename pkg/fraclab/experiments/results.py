"""
What a study hands back to the runner.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Sequence

import numpy as np

from fraclab.experiments.plotting import PlotSpec


@dataclass(frozen=True)
class Check:
    """A named module-level verdict."""
    name: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "passed": bool(self.passed), "detail": self.detail}


@dataclass(frozen=True)
class Table:
    columns: List[str]
    rows: List[Dict[str, Any]]


@dataclass
class StudyResult:
    """Tables become CSV files, plots SVG files and documents JSON files."""
    tables: Dict[str, Table] = field(default_factory=dict)
    plots: Dict[str, PlotSpec] = field(default_factory=dict)
    documents: Dict[str, dict] = field(default_factory=dict)
    checks: List[Check] = field(default_factory=list)
    summary: Dict[str, Any] = field(default_factory=dict)

    def check(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append(Check(name, bool(passed), detail))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def percentiles(values: Sequence[float]) -> Dict[str, float]:
    """min, p5, p50, p95 and max of a sample."""
    arr = np.asarray(values, dtype=float)
    if arr.size == 0:
        return {}
    p5, p50, p95 = np.percentile(arr, [5, 50, 95])
    return {"min": float(arr.min()), "p5": float(p5), "p50": float(p50), "p95": float(p95), "max": float(arr.max())}
