#!/usr/bin/env python3
"""
Hamiltonian-preserving finite-volume solver for the geometric-optics Liouville equation.
"""

from .mesh import PhaseMesh, PhaseField, piecewise_speed
from .flux import (
    TransmissionCoefficients,
    transmission_coefficients,
    refracted_velocity_2d,
    FluxPlan,
    hp_flux_x,
    xi_flux_difference,
    xi_upwind_difference,
    interface_relation_residual,
)
from .scheme import CflReport, cfl_timestep, liouville_rhs, rhs_values, assemble_liouville_matrix, boundary_mass

__all__ = [
    'PhaseMesh', 'PhaseField', 'piecewise_speed', 'TransmissionCoefficients',
    'transmission_coefficients', 'refracted_velocity_2d', 'FluxPlan', 'hp_flux_x',
    'xi_flux_difference', 'xi_upwind_difference', 'interface_relation_residual',
    'CflReport', 'cfl_timestep', 'liouville_rhs', 'rhs_values', 'assemble_liouville_matrix',
    'boundary_mass',
]
