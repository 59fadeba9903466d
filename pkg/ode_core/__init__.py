#!/usr/bin/env python3
"""
Linear ODE systems, augmentation, the Hermitian split and the direct integrator.
"""

from .system import (
    LinearODESystem,
    HermitianPair,
    Trajectory,
    augment,
    augmentation_scale,
    hermitian_split,
    as_matrix,
    to_dense,
)
from .spectrum import (
    DissipativityReport,
    check_dissipativity,
    gershgorin_left_speed,
    max_eigenvalue,
    min_eigenvalue,
)
from .integrate import direct_integrate, forward_euler_matrix_free

__all__ = [
    'LinearODESystem', 'HermitianPair', 'Trajectory', 'augment', 'augmentation_scale',
    'hermitian_split', 'as_matrix', 'to_dense', 'DissipativityReport', 'check_dissipativity',
    'gershgorin_left_speed', 'max_eigenvalue', 'min_eigenvalue', 'direct_integrate',
    'forward_euler_matrix_free',
]
