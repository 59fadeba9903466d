#!/usr/bin/env python3
"""
Exact solutions and error measures for the shipped experiments.
"""

from .exact import (
    exact_convection,
    exact_heat,
    exact_heat_flux,
    cosine_bump,
    exact_interface_advection,
    exact_stefan,
    stefan_source,
    default_stefan_problem,
    optics_initial,
    exact_optics_t1,
    optics_branch_hits,
    cell_average,
)
from .norms import ErrorReport, error_norms, relative_l_inf, observed_order

__all__ = [
    'exact_convection', 'exact_heat', 'exact_heat_flux', 'cosine_bump',
    'exact_interface_advection', 'exact_stefan', 'stefan_source', 'default_stefan_problem',
    'optics_initial', 'exact_optics_t1', 'optics_branch_hits', 'cell_average',
    'ErrorReport', 'error_norms', 'relative_l_inf', 'observed_order',
]
