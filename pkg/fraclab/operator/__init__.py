"""
Discrete fractional Laplacian: kernel, assembled form, pointwise operator,
Tail and eigenpairs.
"""

from .kernel import (
    KernelSpec, fractional_normalization, torsion_constant, torsion_profile, torsion_interpolant,
)
from .assembly import AssemblyOptions, StiffnessForm, assemble_form, mass_matrix
from .form import (
    apply_form, seminorm, mass_product, load_vector, solve_linear, solve_dirichlet,
)
from .pointwise import FlapEstimate, pointwise_flap, tail
from .eigen import EigenOptions, EigenPair, eigenpairs, eigenpairs_csv

__all__ = [
    'KernelSpec', 'fractional_normalization', 'torsion_constant', 'torsion_profile', 'torsion_interpolant',
    'AssemblyOptions', 'StiffnessForm', 'assemble_form', 'mass_matrix',
    'apply_form', 'seminorm', 'mass_product', 'load_vector', 'solve_linear', 'solve_dirichlet',
    'FlapEstimate', 'pointwise_flap', 'tail',
    'EigenOptions', 'EigenPair', 'eigenpairs', 'eigenpairs_csv',
]
