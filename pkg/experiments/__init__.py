#!/usr/bin/env python3
"""
Experiment registry, runner, refinement sweeps and the complexity estimator.
"""

from .registry import Problem, BUILDERS, build_problem
from .runner import RunResult, run_experiment, refine, sweep, SWEEP_COLUMNS
from .complexity import ComplexityEstimate, estimate_complexity, estimate_complexity_for_system

__all__ = [
    'Problem', 'BUILDERS', 'build_problem', 'RunResult', 'run_experiment', 'refine', 'sweep',
    'SWEEP_COLUMNS', 'ComplexityEstimate', 'estimate_complexity', 'estimate_complexity_for_system',
]
