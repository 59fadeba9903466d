#!/usr/bin/env python3
"""
Extreme eigenvalues of Hermitian matrices and the dissipativity check.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg as la
import scipy.sparse as sp
from scipy.sparse.linalg import ArpackError, ArpackNoConvergence, eigsh

from config.constants import DENSE_LIMIT, DISSIPATIVITY_TOL
from loggings import log_debug, log_warning
from ode_core.system import HermitianPair, Matrix
from utils.errors import EigenSolveError


@dataclass(frozen=True)
class DissipativityReport:
    max_eigenvalue: float
    ok: bool


def _extreme_eigenvalue(H: Matrix, largest: bool) -> float:
    n = H.shape[0]
    try:
        if n <= DENSE_LIMIT:
            dense = H.toarray() if sp.issparse(H) else np.asarray(H)
            values = la.eigvalsh(dense)
            return float(values[-1] if largest else values[0])
        value = eigsh(
            sp.csr_matrix(H), k=1, which="LA" if largest else "SA", return_eigenvectors=False
        )
        return float(np.real(value[0]))
    except (la.LinAlgError, ArpackNoConvergence, ArpackError) as e:
        raise EigenSolveError(f"eigenvalue computation failed for n={n}: {e}") from e


def max_eigenvalue(H: Matrix) -> float:
    """Largest eigenvalue of a Hermitian matrix (dense up to DENSE_LIMIT, Lanczos above)."""
    return _extreme_eigenvalue(H, largest=True)


def min_eigenvalue(H: Matrix) -> float:
    """Smallest eigenvalue of a Hermitian matrix."""
    return _extreme_eigenvalue(H, largest=False)


def gershgorin_left_speed(H: Matrix) -> float:
    """
    Gershgorin bound on the most negative eigenvalue of a Hermitian matrix.

    Returns:
        max_i(-Re H_ii + sum_{j != i} |H_ij|), clipped at 0
    """
    if sp.issparse(H):
        H = sp.csr_matrix(H)
        diagonal = H.diagonal()
        absolute_rows = np.asarray(abs(H).sum(axis=1)).reshape(-1)
    else:
        H = np.asarray(H)
        diagonal = np.diag(H)
        absolute_rows = np.abs(H).sum(axis=1)
    off_diagonal = absolute_rows - np.abs(diagonal)
    return max(0.0, float(np.max(-diagonal.real + off_diagonal)))


def check_dissipativity(pair: HermitianPair, tol: float = DISSIPATIVITY_TOL) -> DissipativityReport:
    """
    Check that H1 is negative semi-definite up to `tol`.

    A violation is logged as a warning and reported through `ok`; it never raises.

    Raises:
        EigenSolveError: If the eigenvalue computation fails
    """
    largest = max_eigenvalue(pair.H1)
    ok = largest <= tol
    if ok:
        log_debug(f"dissipativity: max eigenvalue of H1 = {largest:.6g}")
    else:
        log_warning(f"H1 is not negative semi-definite: max eigenvalue {largest:.6g} > tol {tol:g}")
    return DissipativityReport(max_eigenvalue=largest, ok=ok)
