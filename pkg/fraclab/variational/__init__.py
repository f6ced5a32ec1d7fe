"""
Energy functionals, truncated nonlinearities, and the free, ball-constrained,
box-constrained, Newton and sub-supersolution solvers.
"""

from .nonlinearity import (
    Nonlinearity, GrowthReport, growth_check,
    zero, constant, linear, affine, power, cubic, arctan, arctan_plus_one, exponential, from_grid,
    nonlinearity_from_spec, nonlinearity_names,
    truncate_nonlinearity_level, truncate_nonlinearity_sign, clamp_between,
)
from .energy import EnergyFunctional, energy, energy_gradient
from .report import SolveReport, SolveStatus
from .solvers import (
    SolverOptions, minimize_free, minimize_ball, rescaled_residual, solve_semilinear,
    minimize_weighted_box, DescentProbe, probe_x_ball_descent, sign_minimizers,
)
from .order import (
    OrderCertificate, OrderedPair, check_order_residuals, truncate_nonlinearity_order,
    subsupersolution_solve,
)

__all__ = [
    'Nonlinearity', 'GrowthReport', 'growth_check',
    'zero', 'constant', 'linear', 'affine', 'power', 'cubic', 'arctan', 'arctan_plus_one',
    'exponential', 'from_grid', 'nonlinearity_from_spec', 'nonlinearity_names',
    'truncate_nonlinearity_level', 'truncate_nonlinearity_sign', 'clamp_between',
    'EnergyFunctional', 'energy', 'energy_gradient',
    'SolveReport', 'SolveStatus',
    'SolverOptions', 'minimize_free', 'minimize_ball', 'rescaled_residual', 'solve_semilinear',
    'minimize_weighted_box', 'DescentProbe', 'probe_x_ball_descent', 'sign_minimizers',
    'OrderCertificate', 'OrderedPair', 'check_order_residuals', 'truncate_nonlinearity_order',
    'subsupersolution_solve',
]
