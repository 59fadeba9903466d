#!/usr/bin/env python3
"""
Kronecker-sum assembly of d-dimensional operators from a 1-D matrix.
"""

import numpy as np
import scipy.sparse as sp

from config.constants import KRON_SIZE_CAP
from utils.errors import GridError


def build_kron_sum(A1d, d: int, size_cap: int = KRON_SIZE_CAP) -> sp.csr_matrix:
    """
    A ⊗ I ⊗ ... ⊗ I + I ⊗ A ⊗ ... ⊗ I + ... + I ⊗ ... ⊗ I ⊗ A (d terms).

    Args:
        A1d: n×n dense or sparse matrix
        d: Number of dimensions (>= 1)
        size_cap: Largest allowed n**d

    Returns:
        Sparse CSR matrix of size n**d

    Raises:
        GridError: If d < 1 or n**d exceeds size_cap
    """
    if d < 1:
        raise GridError(f"dimension must be >= 1, got {d}")
    A = sp.csr_matrix(A1d)
    n = A.shape[0]
    if n ** d > size_cap:
        raise GridError(f"Kronecker sum of size {n}^{d} = {n ** d} exceeds the cap {size_cap}")

    identity = sp.identity(n, dtype=A.dtype, format="csr")
    total = sp.csr_matrix((n ** d, n ** d), dtype=A.dtype)
    for axis in range(d):
        term = sp.identity(1, dtype=A.dtype, format="csr")
        for position in range(d):
            term = sp.kron(term, A if position == axis else identity, format="csr")
        total = total + term
    return total.tocsr()


def inflow_face_count(n: int, d: int) -> np.ndarray:
    """Count, for every multi-index (j_1..j_d) in C order, how many j_k equal 0."""
    grids = np.indices((n,) * d).reshape(d, -1)
    return (grids == 0).sum(axis=0)
