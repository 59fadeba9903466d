#!/usr/bin/env python3
"""
Discrete error norms and observed convergence orders.
"""

from dataclasses import dataclass

import numpy as np

from utils.errors import GridError


@dataclass(frozen=True)
class ErrorReport:
    l_inf: float
    l2: float
    l1: float
    n_points: int

    def as_rows(self) -> list:
        """(norm, value) pairs in the order they are written out."""
        return [("l_inf", self.l_inf), ("l2", self.l2), ("l1", self.l1)]


def error_norms(numeric, exact, weights=1.0) -> ErrorReport:
    """
    Args:
        numeric: Numerical values (complex input uses the real part)
        exact: Exact values on the same points
        weights: Cell measures, scalar or one per point

    Returns:
        ErrorReport with l_inf = max|d|, l2 = sqrt(sum w d^2), l1 = sum w |d|
    """
    numeric = np.real(np.asarray(numeric)).reshape(-1)
    exact = np.real(np.asarray(exact)).reshape(-1)
    if numeric.shape != exact.shape:
        raise GridError(f"numeric and exact fields differ in size: {numeric.size} vs {exact.size}")
    weights = np.asarray(weights, dtype=float)
    if weights.ndim:
        weights = weights.reshape(-1)
    weights = np.broadcast_to(weights, numeric.shape)
    diff = np.abs(numeric - exact)
    return ErrorReport(
        l_inf=float(diff.max()) if diff.size else 0.0,
        l2=float(np.sqrt(np.sum(weights * diff ** 2))),
        l1=float(np.sum(weights * diff)),
        n_points=int(diff.size),
    )


def relative_l_inf(numeric, exact) -> float:
    """max|numeric - exact| / max|exact|."""
    exact = np.real(np.asarray(exact))
    scale = float(np.max(np.abs(exact)))
    if scale == 0:
        raise GridError("relative error undefined for an identically zero reference")
    return float(np.max(np.abs(np.real(np.asarray(numeric)) - exact))) / scale


def observed_order(errors, spacings) -> float:
    """
    Least-squares slope of log(error) against log(spacing).

    Raises:
        GridError: With fewer than two levels or a non-positive entry
    """
    errors = np.asarray(errors, dtype=float)
    spacings = np.asarray(spacings, dtype=float)
    if errors.size < 2 or errors.size != spacings.size:
        raise GridError("observed_order needs at least two matching levels")
    if np.any(errors <= 0) or np.any(spacings <= 0):
        raise GridError("errors and spacings must be positive")
    slope, _ = np.polyfit(np.log(spacings), np.log(errors), 1)
    return float(slope)
