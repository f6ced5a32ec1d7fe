"""
Domains, meshes, nodal functions and norms.
"""

from .domain import Domain, DomainKind, boundary_distance, truncate, critical_exponent
from .mesh import Mesh, build_mesh, export_mesh, load_mesh
from .functions import GridFunction, pos_neg_parts
from .quadrature import ElementQuadrature, element_quadrature, adaptive_integral
from .norms import (
    lp_norm, lp_norm_estimate, weighted_sup_norm, weighted_holder_norm,
    weighted_quotient, default_holder_exponent,
)

__all__ = [
    'Domain', 'DomainKind', 'boundary_distance', 'truncate', 'critical_exponent',
    'Mesh', 'build_mesh', 'export_mesh', 'load_mesh',
    'GridFunction', 'pos_neg_parts',
    'ElementQuadrature', 'element_quadrature', 'adaptive_integral',
    'lp_norm', 'lp_norm_estimate', 'weighted_sup_norm', 'weighted_holder_norm',
    'weighted_quotient', 'default_holder_exponent',
]
