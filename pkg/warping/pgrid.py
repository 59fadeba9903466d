#!/usr/bin/env python3
"""
The auxiliary p-grid and the warped initial data.
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from utils.errors import GridError


@dataclass(frozen=True)
class PGrid:
    """
    Periodic grid p_k = L + k*dp, k = 0..Np-1, on [L, R) with dp = (R-L)/Np.

    Fourier modes are mu_l = 2*pi*l/(R-L) for l = -Np/2..Np/2-1, stored in
    ascending l, the same order the transform pairs them with data.
    """

    L: float
    R: float
    L0: float
    Np: int

    def __post_init__(self):
        if self.Np <= 0 or self.Np % 2:
            raise GridError(f"Np must be a positive even integer, got {self.Np}")
        if not self.L < self.L0 <= 0 < self.R:
            raise GridError(
                f"p-grid boundaries must satisfy L < L0 <= 0 < R, got L={self.L}, L0={self.L0}, R={self.R}"
            )

    @property
    def dp(self) -> float:
        return (self.R - self.L) / self.Np

    @cached_property
    def nodes(self) -> np.ndarray:
        return self.L + self.dp * np.arange(self.Np)

    @cached_property
    def mode_indices(self) -> np.ndarray:
        return np.arange(-self.Np // 2, self.Np // 2)

    @cached_property
    def modes(self) -> np.ndarray:
        return 2 * np.pi * self.mode_indices / (self.R - self.L)

    def first_node_at_or_above(self, p: float) -> int:
        """Index of the smallest node with p_k > 0 and p_k >= p."""
        candidates = np.nonzero((self.nodes > 0) & (self.nodes >= p))[0]
        if candidates.size == 0:
            raise GridError(f"no p-grid node at or above {p:.6g} (R = {self.R})")
        return int(candidates[0])


@dataclass
class WarpedField:
    """
    n components × Np auxiliary nodes, component-major (row i is w_i).

    `space` is "physical" for values at the p-nodes and "mode" for Fourier
    coefficients in ascending mode order.
    """

    values: np.ndarray
    space: str = "physical"

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=complex)
        if self.values.ndim != 2:
            raise GridError(f"warped field values must be 2-D, got shape {self.values.shape}")
        if self.space not in ("physical", "mode"):
            raise GridError(f"unknown field space '{self.space}'")

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def Np(self) -> int:
        return self.values.shape[1]

    def flatten(self) -> np.ndarray:
        """Stacked vector w = [w_1; w_2; ...; w_n]."""
        return self.values.reshape(-1)

    def copy(self) -> "WarpedField":
        return WarpedField(self.values.copy(), self.space)


def build_pgrid(L: float, R: float, L0: float, Np: int) -> PGrid:
    """
    Build the auxiliary grid.

    Raises:
        GridError: For odd Np or boundaries not ordered L < L0 <= 0 < R
    """
    return PGrid(L=float(L), R=float(R), L0=float(L0), Np=int(Np))


def warp_initial(u0: np.ndarray, grid: PGrid, alpha_neg: float) -> WarpedField:
    """
    Warped initial data: u0 * exp(-alpha_neg*|p|) for p < 0, u0 * exp(-p) for p >= 0.

    Args:
        u0: Initial state (length n)
        grid: Auxiliary grid
        alpha_neg: Decay rate on p < 0 (>= 1; 1 gives the symmetric e^{-|p|})

    Returns:
        WarpedField in physical space
    """
    if alpha_neg < 1:
        raise GridError(f"alpha_neg must be >= 1, got {alpha_neg}")
    p = grid.nodes
    profile = np.where(p < 0, np.exp(-alpha_neg * np.abs(p)), np.exp(-p))
    u0 = np.asarray(u0, dtype=complex).reshape(-1)
    return WarpedField(np.outer(u0, profile), space="physical")
