"""
Solver outcomes.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple

from fraclab.geometry import GridFunction


class SolveStatus(str, Enum):
    CONVERGED = "converged"
    MAX_ITER = "max-iter"
    DIVERGED = "diverged"


@dataclass(frozen=True, eq=False)
class SolveReport:
    """
    Result of a minimization or semilinear solve.

    ``mu`` and ``c_multiplier`` are set by ball-constrained minimization only.
    ``sandwich_margins`` are the smallest interior gaps (u − lower, upper − u)
    of a sub-supersolution solve. ``trace`` holds (iteration, energy, gradient norm) per accepted step.
    """
    solution: GridFunction
    energy: float
    grad_norm: float
    iterations: int
    residual: float
    status: SolveStatus
    method: str
    mu: Optional[float] = None
    c_multiplier: Optional[float] = None
    critical: bool = False
    sandwich_margins: Optional[Tuple[float, float]] = None
    trace: List[Tuple[int, float, float]] = field(default_factory=list)

    @property
    def converged(self) -> bool:
        return self.status is SolveStatus.CONVERGED

    def to_json(self) -> dict:
        return {
            "method": self.method,
            "energy": self.energy,
            "grad_norm": self.grad_norm,
            "mu": self.mu,
            "c_multiplier": self.c_multiplier,
            "iterations": self.iterations,
            "residual": self.residual,
            "status": self.status.value,
            "critical": self.critical,
            "sandwich_margins": list(self.sandwich_margins) if self.sandwich_margins else None,
            "solution_node_values": self.solution.values.tolist(),
        }
