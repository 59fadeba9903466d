#!/usr/bin/env python3
"""
Phase-space mesh (x, xi) for the one-dimensional Liouville equation.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Callable

import numpy as np

from utils.errors import GridError

# Tolerance for matching the xi-grid symmetry and speed-jump locations
_GRID_TOL = 1e-12


@dataclass(frozen=True)
class PhaseMesh:
    """
    N cells in x on [x_lo, x_hi] and M cells in xi on [xi_lo, xi_hi].

    Edge e = 0..N sits between cells e-1 and e. c_left[e] is the limit of the
    speed from cell e-1 and c_right[e] the limit from cell e; at the two outer
    edges both equal the adjacent cell's speed.
    """

    x_lo: float
    x_hi: float
    N: int
    xi_lo: float
    xi_hi: float
    M: int
    c_left: np.ndarray
    c_right: np.ndarray

    def __post_init__(self):
        if self.N < 1 or not self.x_lo < self.x_hi:
            raise GridError(f"bad x-grid: [{self.x_lo}, {self.x_hi}] with N={self.N}")
        if self.M < 2 or self.M % 2:
            raise GridError(f"M must be a positive even integer, got {self.M}")
        if not self.xi_lo < 0 < self.xi_hi or abs(self.xi_lo + self.xi_hi) > _GRID_TOL * self.xi_hi:
            raise GridError(f"xi-grid must be symmetric about 0, got [{self.xi_lo}, {self.xi_hi}]")
        c_left = np.asarray(self.c_left, dtype=float).reshape(-1)
        c_right = np.asarray(self.c_right, dtype=float).reshape(-1)
        if c_left.shape[0] != self.N + 1 or c_right.shape[0] != self.N + 1:
            raise GridError(f"edge speeds need N+1 = {self.N + 1} entries")
        if np.any(c_left <= 0) or np.any(c_right <= 0):
            raise GridError("wave speeds must be strictly positive")
        object.__setattr__(self, "c_left", c_left)
        object.__setattr__(self, "c_right", c_right)

    @classmethod
    def uniform(
        cls,
        x_range: tuple,
        N: int,
        xi_range: tuple,
        M: int,
        speed: Callable[[np.ndarray], np.ndarray],
    ) -> "PhaseMesh":
        """
        Mesh with a piecewise-constant speed sampled at the x-cell centres.

        Args:
            x_range: (x_lo, x_hi)
            N: Number of x-cells
            xi_range: (xi_lo, xi_hi), symmetric about 0
            M: Number of xi-cells (even)
            speed: Vectorised map x -> c(x) > 0, constant on each cell

        Returns:
            PhaseMesh whose speed jumps sit at cell edges
        """
        x_lo, x_hi = map(float, x_range)
        dx = (x_hi - x_lo) / N
        centers = x_lo + dx * (np.arange(N) + 0.5)
        cell = np.asarray(speed(centers), dtype=float).reshape(-1)
        if cell.shape[0] != N:
            raise GridError("speed map must return one value per cell")
        c_left = np.concatenate([cell[:1], cell])
        c_right = np.concatenate([cell, cell[-1:]])
        return cls(x_lo, x_hi, N, float(xi_range[0]), float(xi_range[1]), M, c_left, c_right)

    @classmethod
    def two_speed(
        cls,
        x_range: tuple,
        N: int,
        xi_range: tuple,
        M: int,
        c_minus: float,
        c_plus: float,
        position: float = 0.0,
    ) -> "PhaseMesh":
        """Speed c_minus for x < position and c_plus beyond; position must be an x-edge."""
        x_lo, x_hi = map(float, x_range)
        dx = (x_hi - x_lo) / N
        offset = (position - x_lo) / dx
        if abs(offset - round(offset)) > 1e-9 or not 0 < round(offset) < N:
            raise GridError(f"speed jump at x = {position} is not an interior cell edge")
        return cls.uniform(x_range, N, xi_range, M, piecewise_speed(c_minus, c_plus, position))

    @property
    def dx(self) -> float:
        return (self.x_hi - self.x_lo) / self.N

    @property
    def dxi(self) -> float:
        return (self.xi_hi - self.xi_lo) / self.M

    @cached_property
    def x_edges(self) -> np.ndarray:
        return self.x_lo + self.dx * np.arange(self.N + 1)

    @cached_property
    def x_centers(self) -> np.ndarray:
        return self.x_lo + self.dx * (np.arange(self.N) + 0.5)

    @cached_property
    def xi_edges(self) -> np.ndarray:
        return self.xi_lo + self.dxi * np.arange(self.M + 1)

    @cached_property
    def xi_centers(self) -> np.ndarray:
        # symmetric construction so that xi_{M-1-j} == -xi_j exactly
        half = self.dxi * (np.arange(self.M // 2) + 0.5)
        return np.concatenate([-half[::-1], half])

    @cached_property
    def cell_speed(self) -> np.ndarray:
        """c_i, the average of the two inside-cell limits."""
        return 0.5 * (self.c_right[:-1] + self.c_left[1:])

    @cached_property
    def speed_gradient(self) -> np.ndarray:
        """Change of c across each cell, c_left[i+1] - c_right[i]; zero for piecewise-constant c."""
        return self.c_left[1:] - self.c_right[:-1]

    @property
    def shape(self) -> tuple:
        return (self.N, self.M)

    @property
    def size(self) -> int:
        return self.N * self.M

    def mirror_index(self, j):
        """Index of -xi_j."""
        return self.M - 1 - j


def piecewise_speed(c_minus: float, c_plus: float, position: float = 0.0) -> Callable[[np.ndarray], np.ndarray]:
    def speed(x: np.ndarray) -> np.ndarray:
        return np.where(np.asarray(x) < position, c_minus, c_plus)
    return speed


@dataclass
class PhaseField:
    """Cell averages f_ij on an N×M mesh, rows indexed by x."""

    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values)
        if self.values.ndim != 2:
            raise GridError(f"phase field must be 2-D, got shape {self.values.shape}")

    @classmethod
    def sample(cls, mesh: PhaseMesh, func: Callable[[np.ndarray, np.ndarray], np.ndarray]) -> "PhaseField":
        """Point values of func at the cell centres."""
        X, XI = np.meshgrid(mesh.x_centers, mesh.xi_centers, indexing="ij")
        return cls(np.asarray(func(X, XI), dtype=float))

    def flatten(self) -> np.ndarray:
        return self.values.reshape(-1)
