#!/usr/bin/env python3
"""
Finite-difference builders turning boundary and interface PDE problems into linear ODE systems.
"""

from .mesh import Mesh1D, InterfaceSpec, StefanProblem
from .kron import build_kron_sum, inflow_face_count
from .convection import build_convection_inflow, build_convection_inflow_nd, upwind_matrix
from .heat import build_heat_dirichlet, build_heat_mixed, build_heat_dirichlet_nd, laplacian_1d
from .interface import build_advection_interface, interface_flux_gap, interface_node
from .stefan import (
    StefanCoefficients,
    stefan_coefficients,
    stefan_matrix,
    build_stefan,
    stefan_jump_residuals,
    locate_interface,
)

__all__ = [
    'Mesh1D', 'InterfaceSpec', 'StefanProblem', 'build_kron_sum', 'inflow_face_count',
    'build_convection_inflow', 'build_convection_inflow_nd', 'upwind_matrix',
    'build_heat_dirichlet', 'build_heat_mixed', 'build_heat_dirichlet_nd', 'laplacian_1d',
    'build_advection_interface', 'interface_flux_gap', 'interface_node',
    'StefanCoefficients', 'stefan_coefficients', 'stefan_matrix', 'build_stefan',
    'stefan_jump_residuals', 'locate_interface',
]
