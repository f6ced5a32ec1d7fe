"""Error types raised by fraclab."""

from typing import Any, Optional, Sequence, Tuple


class FraclabError(Exception):
    """Base error for every failure reported by the library."""
    pass


class DomainError(FraclabError):
    """Invalid geometry parameters or points outside the closed domain."""
    pass


class MeshError(FraclabError):
    """Mesh construction failed (resolution too small, degenerate cells)."""

    def __init__(self, message: str, min_angle: Optional[float] = None):
        super().__init__(message)
        self.min_angle = min_angle


class NotInWeightedSpaceError(FraclabError):
    """A function expected to vanish on the boundary does not."""

    def __init__(self, message: str, max_boundary_value: float = 0.0):
        super().__init__(message)
        self.max_boundary_value = max_boundary_value


class AssemblyError(FraclabError):
    """Stiffness assembly produced a non-finite entry."""

    def __init__(self, message: str, element_pair: Optional[Tuple[int, int]] = None):
        super().__init__(message)
        self.element_pair = element_pair


class QuadratureError(FraclabError):
    """Adaptive quadrature did not reach the requested tolerance."""

    def __init__(self, message: str, error_bound: float = float("nan")):
        super().__init__(message)
        self.error_bound = error_bound


class EigenSolverError(FraclabError):
    """Inverse iteration did not converge."""

    def __init__(self, message: str, residuals: Sequence[float] = ()):
        super().__init__(message)
        self.residuals = list(residuals)


class GrowthViolationError(FraclabError):
    """A nonlinearity violates its declared growth bound."""

    def __init__(self, message: str, witness: Any = None):
        super().__init__(message)
        self.witness = witness


class SingularJacobianError(FraclabError):
    """Newton's Jacobian is numerically singular (resonance)."""

    def __init__(self, message: str, smallest_eigenvalue: float = 0.0):
        super().__init__(message)
        self.smallest_eigenvalue = smallest_eigenvalue


class ConstraintQualificationError(FraclabError):
    """Ball-constrained minimizer produced a positive multiplier."""

    def __init__(self, message: str, multiplier: float = 0.0):
        super().__init__(message)
        self.multiplier = multiplier


class OrderViolationError(FraclabError):
    """Lower function exceeds upper function at some node."""

    def __init__(self, message: str, node: Optional[int] = None):
        super().__init__(message)
        self.node = node


class SandwichViolationError(FraclabError):
    """A computed solution escaped its ordered pair."""

    def __init__(self, message: str, node: Optional[int] = None):
        super().__init__(message)
        self.node = node


class InvalidCertificateError(FraclabError):
    """A principle check received a failed or wrongly signed certificate."""
    pass


class PrincipleViolationError(FraclabError):
    """A hard lemma check failed (e.g. a non-positive barrier constant)."""
    pass


class GammaFitError(FraclabError):
    """The Talenti ratio is not constant across probe points."""

    def __init__(self, message: str, ratios: Sequence[float] = ()):
        super().__init__(message)
        self.ratios = list(ratios)


class ConfigError(FraclabError):
    """Experiment configuration does not match the schema."""

    def __init__(self, message: str, paths: Sequence[str] = ()):
        super().__init__(message)
        self.paths = list(paths)


class PlotError(FraclabError):
    """Plot series are empty or ragged."""
    pass


class NonFiniteEnergyError(FraclabError):
    """The primitive F or the load evaluated to a non-finite value."""

    def __init__(self, message: str, location: Any = None):
        super().__init__(message)
        self.location = location
