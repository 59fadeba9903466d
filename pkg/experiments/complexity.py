#!/usr/bin/env python3
"""
Query-complexity estimate for simulating a sparse Hamiltonian.

For a Hamiltonian with sparsity s and h = T * max|H_ij| the number of
queries is of order s h log(s h / eps) / log(log(h / eps)).
"""

import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from utils.errors import ComplexityRegimeError, ConfigError
from warping.schrodinger import SchrodingerSystem


@dataclass(frozen=True)
class ComplexityEstimate:
    size: int
    sparsity: int
    max_entry: float
    T: float
    h_max1: float
    epsilon: float
    estimate: float


def estimate_complexity(size: int, sparsity: int, max_entry: float, T: float, epsilon: float) -> ComplexityEstimate:
    """
    Args:
        size: Dimension of the Hamiltonian
        sparsity: Largest number of nonzeros in a row
        max_entry: Largest entry magnitude
        T: Simulation time
        epsilon: Target error, 0 < epsilon < 1

    Returns:
        ComplexityEstimate

    Raises:
        ConfigError: For non-positive inputs or epsilon >= 1
        ComplexityRegimeError: If h/epsilon <= e, where log(log(h/epsilon)) is not positive
    """
    if size < 1 or sparsity < 1:
        raise ConfigError(f"size and sparsity must be positive, got {size}, {sparsity}")
    if max_entry <= 0 or T <= 0:
        raise ConfigError(f"max_entry and T must be positive, got {max_entry}, {T}")
    if not 0 < epsilon < 1:
        raise ConfigError(f"epsilon must lie in (0, 1), got {epsilon}")

    h = T * max_entry
    if h / epsilon <= math.e:
        raise ComplexityRegimeError(f"h/epsilon = {h / epsilon:.4g} <= e; the bound is undefined")
    estimate = sparsity * h * math.log(sparsity * h / epsilon) / math.log(math.log(h / epsilon))
    return ComplexityEstimate(
        size=int(size), sparsity=int(sparsity), max_entry=float(max_entry), T=float(T),
        h_max1=h, epsilon=float(epsilon), estimate=estimate,
    )


def _max_abs(H) -> float:
    if sp.issparse(H):
        return float(abs(H).max()) if H.nnz else 0.0
    return float(np.max(np.abs(H)))


def _row_sparsity(system: SchrodingerSystem) -> int:
    # every mode block shares the pattern of H1 + H2
    pattern = (abs(sp.csr_matrix(system.pair.H1)) + abs(sp.csr_matrix(system.pair.H2))).tocsr()
    pattern.eliminate_zeros()
    return int(np.max(np.diff(pattern.indptr))) if pattern.shape[0] else 0


def estimate_complexity_for_system(system: SchrodingerSystem, T: float, epsilon: float) -> ComplexityEstimate:
    """
    Estimate for an assembled Schrödingerised system.

    The entry bound is max|mu_l| * ||H1||_max + ||H2||_max and the size is n*Np.
    """
    mu_max = float(np.max(np.abs(system.grid.modes)))
    max_entry = mu_max * _max_abs(system.pair.H1) + _max_abs(system.pair.H2)
    sparsity = max(1, _row_sparsity(system))
    return estimate_complexity(system.n * system.grid.Np, sparsity, max_entry, T, epsilon)
