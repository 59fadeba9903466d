#!/usr/bin/env python3
"""
One-dimensional meshes and problem descriptions for the finite-difference builders.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Optional

import numpy as np

from utils.errors import GridError

TimeMap = Callable[[float], float]


@dataclass(frozen=True)
class Mesh1D:
    """Uniform nodes x_j = a + j*dx, j = 0..Nx, dx = (b - a)/Nx."""

    a: float
    b: float
    Nx: int

    def __post_init__(self):
        if not self.a < self.b:
            raise GridError(f"mesh needs a < b, got [{self.a}, {self.b}]")
        if self.Nx < 1:
            raise GridError(f"mesh needs Nx >= 1, got {self.Nx}")

    @property
    def dx(self) -> float:
        return (self.b - self.a) / self.Nx

    @cached_property
    def nodes(self) -> np.ndarray:
        return self.a + self.dx * np.arange(self.Nx + 1)

    def node_index(self, x: float, tol: float = 1e-10) -> int:
        """Index of the node at x; raises GridError if x is not a node."""
        position = (x - self.a) / self.dx
        index = int(round(position))
        if abs(position - index) > tol or not 0 <= index <= self.Nx:
            raise GridError(f"x = {x} is not a mesh node")
        return index


@dataclass(frozen=True)
class InterfaceSpec:
    """
    Advection speeds on either side of an interface and the continuity law.

    continuity = "mass" gives u(0+) = u(0-); "flux" gives c+ u(0+) = c- u(0-).
    """

    c_minus: float
    c_plus: float
    continuity: str = "flux"
    position: float = 0.0

    def __post_init__(self):
        if self.c_minus <= 0 or self.c_plus <= 0:
            raise GridError(f"interface speeds must be positive, got {self.c_minus}, {self.c_plus}")
        if self.continuity not in ("mass", "flux"):
            raise GridError(f"unknown continuity '{self.continuity}'")

    @property
    def rho(self) -> float:
        return 1.0 if self.continuity == "mass" else self.c_minus / self.c_plus


@dataclass(frozen=True)
class StefanProblem:
    """
    u_t = (beta u_x)_x + f with [u] = 0 and [beta u_x] = 0 on the moving interface alpha(t).

    beta is beta_minus left of alpha(t) and beta_plus right of it.
    """

    beta_minus: float
    beta_plus: float
    alpha: TimeMap
    alpha_rate: TimeMap
    source: Optional[Callable[[float, np.ndarray], np.ndarray]] = None
    dirichlet_left: Optional[TimeMap] = None
    dirichlet_right: Optional[TimeMap] = None

    def __post_init__(self):
        if self.beta_minus <= 0 or self.beta_plus <= 0:
            raise GridError("Stefan coefficients must be positive")

    @property
    def beta_jump(self) -> float:
        return self.beta_plus - self.beta_minus
