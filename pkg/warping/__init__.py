#!/usr/bin/env python3
"""
The Schrödingerisation engine: p-grid, warped data, Fourier transform in p,
mode-by-mode evolution and recovery of the physical solution.
"""

from .pgrid import PGrid, WarpedField, build_pgrid, warp_initial
from .transform import TransformPlan, to_fourier, from_fourier
from .schrodinger import (
    SchrodingerSystem,
    assemble_schrodinger,
    evolve,
    evolve_time_dependent,
    forward_euler_stability_bound,
)
from .recovery import (
    estimate_left_boundary,
    estimate_left_boundary_over_time,
    left_moving_speed,
    left_tail_fraction,
    recover_integral,
    recover_point,
    recovery_threshold,
    right_moving_speed,
)
from .pipeline import SchrodingerResult, schrodingerize_and_solve

__all__ = [
    'PGrid', 'WarpedField', 'build_pgrid', 'warp_initial', 'TransformPlan', 'to_fourier',
    'from_fourier', 'SchrodingerSystem', 'assemble_schrodinger', 'evolve', 'evolve_time_dependent',
    'forward_euler_stability_bound', 'estimate_left_boundary', 'estimate_left_boundary_over_time',
    'left_moving_speed', 'left_tail_fraction', 'recover_integral', 'recover_point',
    'recovery_threshold', 'right_moving_speed', 'SchrodingerResult', 'schrodingerize_and_solve',
]
