#!/usr/bin/env python3
"""
Central-difference semi-discretisations of u_t = u_xx with Dirichlet or mixed boundaries.
"""

from typing import Callable, Optional

import numpy as np
import scipy.sparse as sp

from ode_core.system import LinearODESystem
from pde_builders.kron import build_kron_sum
from pde_builders.mesh import Mesh1D, TimeMap
from utils.errors import GridError


def laplacian_1d(n: int, dx: float) -> sp.csr_matrix:
    """(1/dx^2) tridiag(1, -2, 1) of size n."""
    ones = np.ones(n)
    return sp.csr_matrix(sp.diags([ones[1:], -2 * ones, ones[1:]], [-1, 0, 1]) / dx ** 2, dtype=complex)


def build_heat_dirichlet(
    mesh: Mesh1D,
    g_left: Optional[TimeMap],
    g_right: Optional[TimeMap],
    initial: Optional[Callable[[np.ndarray], np.ndarray]] = None,
) -> LinearODESystem:
    """
    Nx - 1 interior unknowns with Dirichlet data at both ends.

    Returns:
        LinearODESystem with b(t) = (1/dx^2) [g_left(t), 0, ..., 0, g_right(t)];
        b is identically zero when both maps are None
    """
    if mesh.Nx < 2:
        raise GridError(f"heat Dirichlet needs Nx >= 2, got {mesh.Nx}")
    n, dx = mesh.Nx - 1, mesh.dx
    A = laplacian_1d(n, dx)
    x = mesh.nodes[1:-1]
    u0 = initial(x) if initial is not None else np.zeros(n)

    b = None
    if g_left is not None or g_right is not None:
        def b(t: float) -> np.ndarray:
            out = np.zeros(n, dtype=complex)
            if g_left is not None:
                out[0] += g_left(t) / dx ** 2
            if g_right is not None:
                out[-1] += g_right(t) / dx ** 2
            return out

    return LinearODESystem.constant_system(A, u0, b)


def build_heat_mixed(
    mesh: Mesh1D,
    g: Optional[TimeMap],
    h: Optional[TimeMap],
    initial: Optional[Callable[[np.ndarray], np.ndarray]] = None,
) -> LinearODESystem:
    """
    Dirichlet u(t, a) = g(t) and Neumann u_x(t, b) = h(t), ghost point eliminated.

    Unknowns sit at x_1..x_Nx; the last row of A is (1/dx^2)[..., 2, -2] and
    b(t) = (1/dx^2)[g(t), 0, ..., 0, 2 h(t) dx].
    """
    if mesh.Nx < 2:
        raise GridError(f"heat mixed needs Nx >= 2, got {mesh.Nx}")
    n, dx = mesh.Nx, mesh.dx
    A = laplacian_1d(n, dx).tolil()
    A[n - 1, n - 2] = 2 / dx ** 2
    A = sp.csr_matrix(A)
    x = mesh.nodes[1:]
    u0 = initial(x) if initial is not None else np.zeros(n)

    b = None
    if g is not None or h is not None:
        def b(t: float) -> np.ndarray:
            out = np.zeros(n, dtype=complex)
            if g is not None:
                out[0] += g(t) / dx ** 2
            if h is not None:
                out[-1] += 2 * h(t) * dx / dx ** 2
            return out

    return LinearODESystem.constant_system(A, u0, b)


def build_heat_dirichlet_nd(mesh: Mesh1D, d: int) -> sp.csr_matrix:
    """d-dimensional Dirichlet Laplacian as the Kronecker sum of the 1-D matrix."""
    return build_kron_sum(laplacian_1d(mesh.Nx - 1, mesh.dx), d)
