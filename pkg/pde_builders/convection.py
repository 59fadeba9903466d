#!/usr/bin/env python3
"""
Upwind semi-discretisation of u_t + u_x = 0 with an inflow condition at x = a.
"""

from typing import Callable, Optional

import numpy as np
import scipy.sparse as sp

from ode_core.system import LinearODESystem
from pde_builders.kron import build_kron_sum, inflow_face_count
from pde_builders.mesh import Mesh1D, TimeMap


def upwind_matrix(Nx: int, dx: float) -> sp.csr_matrix:
    """L_h = (T_h - I)/dx with T_h the lower shift."""
    shift = sp.diags(np.ones(Nx - 1), -1, shape=(Nx, Nx))
    return sp.csr_matrix((shift - sp.identity(Nx)) / dx, dtype=complex)


def build_convection_inflow(
    mesh: Mesh1D,
    inflow: Optional[TimeMap],
    initial: Optional[Callable[[np.ndarray], np.ndarray]] = None,
) -> LinearODESystem:
    """
    Unknowns at x_1..x_Nx (the upwind row is also used at the right endpoint).

    Args:
        mesh: Mesh on [a, b]
        inflow: Boundary value g(t) = u(t, a); None means g = 0
        initial: Initial profile; zero if omitted

    Returns:
        LinearODESystem with A = (T_h - I)/dx and b(t) = [g(t)/dx, 0, ..., 0]
    """
    Nx, dx = mesh.Nx, mesh.dx
    A = upwind_matrix(Nx, dx)
    x = mesh.nodes[1:]
    u0 = initial(x) if initial is not None else np.zeros(Nx)

    b = None
    if inflow is not None:
        def b(t: float) -> np.ndarray:
            out = np.zeros(Nx, dtype=complex)
            out[0] = inflow(t) / dx
            return out

    return LinearODESystem.constant_system(A, u0, b)


def build_convection_inflow_nd(
    mesh: Mesh1D,
    d: int,
    inflow: Optional[TimeMap] = None,
    initial: Optional[Callable[..., np.ndarray]] = None,
) -> LinearODESystem:
    """
    d-dimensional upwind system for u_t + sum_k u_{x_k} = 0 on [a, b]^d.

    The inflow value g(t) enters every unknown adjacent to an inflow face,
    once per face, so b = (g/dx) * (number of indices j_k equal to 0).
    """
    Nx, dx = mesh.Nx, mesh.dx
    A = build_kron_sum(upwind_matrix(Nx, dx), d)
    if initial is not None:
        coords = np.meshgrid(*([mesh.nodes[1:]] * d), indexing="ij")
        u0 = np.asarray(initial(*coords)).reshape(-1)
    else:
        u0 = np.zeros(Nx ** d)

    b = None
    if inflow is not None:
        faces = inflow_face_count(Nx, d).astype(complex)

        def b(t: float) -> np.ndarray:
            return faces * inflow(t) / dx

    return LinearODESystem.constant_system(A, u0, b)
