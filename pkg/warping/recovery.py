#!/usr/bin/env python3
"""
Left-boundary estimate for the p-domain, recovery of u from the warped field,
and the support diagnostic.
"""

import math
from typing import Callable, Iterable

import numpy as np

from config.constants import SUPPORT_TAIL_FRACTION
from ode_core.spectrum import gershgorin_left_speed, max_eigenvalue, min_eigenvalue
from ode_core.system import HermitianPair
from utils.errors import ConfigError, GridError
from warping.pgrid import PGrid, WarpedField


def left_moving_speed(pair: HermitianPair, method: str = "gershgorin") -> float:
    """
    Fastest left-moving speed s_* of the warped transport.

    "eigen" returns |lambda_min(H1)| (0 when H1 has no negative eigenvalue);
    "gershgorin" returns the Gershgorin bound on it, which is never smaller.
    """
    if method == "gershgorin":
        return gershgorin_left_speed(pair.H1)
    if method == "eigen":
        return max(0.0, -min_eigenvalue(pair.H1))
    raise ConfigError(f"unknown speed bound '{method}'")


def estimate_left_boundary(pair: HermitianPair, T: float, L0: float, method: str = "gershgorin") -> float:
    """
    L = L0 - s_* T, far enough left that no left-moving wave reaches p = L by time T.

    s_* is the left-moving speed |lambda_min(H1)|. The default "gershgorin"
    route replaces it with the Gershgorin bound max_i(-Re H1_ii + sum_{j != i} |H1_ij|),
    which is never smaller and needs no eigen solve, so L can only move
    further left. "eigen" uses the exact |lambda_min(H1)|.

    Args:
        pair: Hermitian split of the system matrix
        T: Final time (>= 0)
        L0: Left edge of the initial near-support
        method: "gershgorin" (default) or "eigen"

    Returns:
        Left boundary L
    """
    if T < 0:
        raise ConfigError(f"T must be non-negative, got {T}")
    if T == 0:
        return float(L0)
    return float(L0 - left_moving_speed(pair, method) * T)


def estimate_left_boundary_over_time(
    pair_at: Callable[[float], HermitianPair],
    times: Iterable[float],
    T: float,
    L0: float,
    method: str = "gershgorin",
) -> float:
    """Same as estimate_left_boundary with s_* maximised over the sampled times."""
    if T == 0:
        return float(L0)
    speed = max(left_moving_speed(pair_at(t), method) for t in times)
    return float(L0 - speed * T)


def right_moving_speed(pair: HermitianPair) -> float:
    """max(0, lambda_max(H1)); positive when H1 is indefinite, as after augmentation."""
    return max(0.0, max_eigenvalue(pair.H1))


def recovery_threshold(p_kink: float, dp: float) -> float:
    """
    Lowest p usable for recovery.

    The kink of the warped data sits at p_kink = max(0, lambda_max(H1))*T at the
    final time. For dissipative systems p_kink = 0 and every positive node is
    usable; otherwise the node keeps a clearance of max(p_kink, 4*dp) from it.
    """
    if p_kink <= 0:
        return 0.0
    return p_kink + max(p_kink, 4 * dp)


def recover_point(w: WarpedField, grid: PGrid, k: int) -> np.ndarray:
    """
    u = exp(p_k) * w[:, k] for a node with p_k > 0.

    Raises:
        GridError: If p_k <= 0 or the field is in mode space
    """
    if w.space != "physical":
        raise GridError("recover_point needs the field in physical space")
    p_k = grid.nodes[k]
    if p_k <= 0:
        raise GridError(f"recovery node p_{k} = {p_k:.6g} is not positive")
    return math.exp(p_k) * w.values[:, k]


def recover_integral(w: WarpedField, grid: PGrid, p_min: float = 0.0) -> np.ndarray:
    """
    u = exp(p_min) * dp * sum over p_k >= p_min of w[:, k].

    With the default p_min = 0 this is the left Riemann sum of the integral of
    v over [0, R]; the truncation deficit exp(-R) is not renormalised.
    """
    if w.space != "physical":
        raise GridError("recover_integral needs the field in physical space")
    mask = grid.nodes >= p_min
    return math.exp(p_min) * grid.dp * w.values[:, mask].sum(axis=1)


def left_tail_fraction(w: WarpedField, fraction: float = SUPPORT_TAIL_FRACTION) -> float:
    """Share of the squared norm sitting in the leftmost `fraction` of p-nodes."""
    count = max(1, int(math.ceil(fraction * w.Np)))
    weights = np.abs(w.values) ** 2
    total = float(weights.sum())
    if total == 0:
        return 0.0
    return float(weights[:, :count].sum()) / total
