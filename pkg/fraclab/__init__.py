"""
fraclab: a numerical lab for the fractional Laplacian with zero exterior data.

The package discretizes (−Δ)^s on intervals and disks with P1 elements,
minimizes the energies of semilinear problems (−Δ)^s u = f(x, u), and
turns the maximum principles, the Hopf lemma and the Moser bounds into
executable checks.

Basic usage:
    from fraclab import Domain, KernelSpec, assemble_form, build_mesh, GridFunction, solve_linear

    domain = Domain.interval(-1.0, 1.0, s=0.5)
    form = assemble_form(build_mesh(domain, 64), KernelSpec.for_domain(domain))

    # Torsion function: (−Δ)^{1/2} u = 1, close to (1 − x²)^{1/2}
    u = solve_linear(form, GridFunction.constant(form.mesh, 1.0))

    # Or run a study end to end
    from fraclab import parse_config, run_experiment
    run_experiment(parse_config('{"experiment": "torsion-convergence"}'))
"""

# Geometry and discretization
from .geometry import Domain, Mesh, GridFunction, build_mesh
from .operator import KernelSpec, StiffnessForm, assemble_form, solve_linear, eigenpairs

# Energies and solvers
from .variational import (
    Nonlinearity, EnergyFunctional, SolverOptions, SolveReport,
    minimize_free, minimize_ball, solve_semilinear, subsupersolution_solve,
)

# Experiments
from .experiments import ExperimentConfig, parse_config, run_experiment

from .error import FraclabError

__all__ = [
    # Geometry
    'Domain',           # Interval or disk with order s
    'Mesh',             # Nodes, elements, boundary flags
    'GridFunction',     # P1 function on a mesh
    'build_mesh',

    # Operator
    'KernelSpec',       # Dimension, order and normalization
    'StiffnessForm',    # Assembled bilinear form
    'assemble_form',
    'solve_linear',
    'eigenpairs',

    # Variational
    'Nonlinearity',
    'EnergyFunctional',
    'SolverOptions',
    'SolveReport',
    'minimize_free',
    'minimize_ball',
    'solve_semilinear',
    'subsupersolution_solve',

    # Experiments
    'ExperimentConfig',
    'parse_config',
    'run_experiment',

    'FraclabError',     # Root of all fraclab errors
]

__version__ = '0.1.0'
