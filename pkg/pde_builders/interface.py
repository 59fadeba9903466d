#!/usr/bin/env python3
"""
Upwind advection across a fixed speed interface with mass or flux continuity.
"""

from typing import Callable, Optional

import numpy as np
import scipy.sparse as sp

from ode_core.system import LinearODESystem
from pde_builders.mesh import InterfaceSpec, Mesh1D, TimeMap
from utils.errors import GridError


def interface_node(mesh: Mesh1D, spec: InterfaceSpec) -> int:
    """Mesh index of the interface node; it must lie strictly inside [a, b]."""
    j0 = mesh.node_index(spec.position)
    if not 0 < j0 < mesh.Nx:
        raise GridError(f"interface at x = {spec.position} sits on the boundary of [{mesh.a}, {mesh.b}]")
    return j0


def build_advection_interface(
    mesh: Mesh1D,
    spec: InterfaceSpec,
    inflow: Optional[TimeMap] = None,
    initial: Optional[Callable[[np.ndarray], np.ndarray]] = None,
) -> LinearODESystem:
    """
    Semi-discrete u_t + c(x) u_x = 0 with c = c_minus left of the interface
    and c = c_plus right of it.

    Unknowns are the nodes x_1..x_Nx of the mesh; the interface node carries
    the left limit u(0-). Rows up to the interface node are upwind with
    c_minus, the next row is -(c_plus u_{j+1} - c_plus*rho u_j)/dx, and the
    remaining rows are upwind with c_plus.

    Args:
        mesh: Mesh on [-a, a] with a node at spec.position
        spec: Interface speeds and continuity law
        inflow: Value u(t, -a) at the left boundary; None means zero
        initial: Initial profile

    Returns:
        LinearODESystem with b(t) = [c_minus * inflow(t)/dx, 0, ..., 0]

    Raises:
        GridError: If the interface position is not an interior mesh node
    """
    j0 = interface_node(mesh, spec)
    n, dx = mesh.Nx, mesh.dx
    # row r holds node r + 1
    node = np.arange(1, n + 1)
    speed = np.where(node <= j0, spec.c_minus, spec.c_plus)

    diagonal = -speed / dx
    lower = speed[1:] / dx
    # interface row couples u(0+) to rho * u(0-)
    lower[j0 - 1] = spec.c_plus * spec.rho / dx
    A = sp.csr_matrix(sp.diags([lower, diagonal], [-1, 0], shape=(n, n)), dtype=complex)

    u0 = initial(mesh.nodes[1:]) if initial is not None else np.zeros(n)

    b = None
    if inflow is not None:
        def b(t: float) -> np.ndarray:
            out = np.zeros(n, dtype=complex)
            out[0] = spec.c_minus * inflow(t) / dx
            return out

    return LinearODESystem.constant_system(A, u0, b)


def interface_flux_gap(u_nodes: np.ndarray, mesh: Mesh1D, spec: InterfaceSpec) -> float:
    """
    |c_minus u(0-) - c_plus u(0+)| read off a nodal solution.

    Args:
        u_nodes: Values at x_1..x_Nx (the system's unknowns)
        mesh: Mesh the system was built on
        spec: Interface description

    Returns:
        Discrete flux mismatch across the interface
    """
    j0 = interface_node(mesh, spec)
    u = np.real(np.asarray(u_nodes)).reshape(-1)
    return float(abs(spec.c_minus * u[j0 - 1] - spec.c_plus * u[j0]))
