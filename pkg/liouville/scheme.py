#!/usr/bin/env python3
"""
Semi-discrete Liouville operator: matrix-free right-hand side, sparse
assembly of the same operator, and the CFL time step.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.sparse as sp

from config.constants import LIOUVILLE_SIZE_CAP
from liouville.flux import FluxPlan, xi_upwind_difference
from liouville.mesh import PhaseField, PhaseMesh
from ode_core.system import LinearODESystem
from utils.errors import ConfigError, GridError


def rhs_values(values: np.ndarray, mesh: PhaseMesh, plan: FluxPlan) -> np.ndarray:
    """df/dt as an N×M array; the workhorse behind liouville_rhs."""
    values = np.asarray(values).reshape(mesh.shape)
    F_plus, F_minus = plan.evaluate(values)
    sign = np.sign(mesh.xi_centers)[None, :]
    transport = -(mesh.cell_speed[:, None] * sign / mesh.dx) * (F_plus[1:] - F_minus[:-1])

    coefficient = mesh.speed_gradient / (mesh.dx * mesh.dxi)
    if not np.any(coefficient):
        return transport
    xi_term = coefficient[:, None] * np.abs(mesh.xi_centers)[None, :] * xi_upwind_difference(values, mesh)
    return transport + xi_term


def liouville_rhs(f: PhaseField, mesh: PhaseMesh, plan: Optional[FluxPlan] = None) -> PhaseField:
    """
    Right-hand side of the semi-discrete scheme,

        df_ij/dt = -(c_i sgn(xi_j)/dx) (F_plus[i+1, j] - F_minus[i, j])
                   + ((c_left[i+1] - c_right[i])/(dx dxi)) |xi_j| D_xi f_ij

    with zero-inflow ghost cells on all four sides.
    """
    if f.values.shape != mesh.shape:
        raise GridError(f"field shape {f.values.shape} does not match mesh {mesh.shape}")
    return PhaseField(rhs_values(f.values, mesh, plan or FluxPlan.build(mesh)))


def assemble_liouville_matrix(
    mesh: PhaseMesh,
    initial: Optional[PhaseField] = None,
    plan: Optional[FluxPlan] = None,
    size_cap: int = LIOUVILLE_SIZE_CAP,
) -> LinearODESystem:
    """
    Sparse matrix of the Liouville operator on vec(f) (row-major in i).

    Args:
        mesh: Phase mesh
        initial: Initial field; zero if omitted
        plan: Precomputed flux plan
        size_cap: Largest allowed N*M

    Returns:
        Constant LinearODESystem with A vec(f) = vec(liouville_rhs(f)) and b = 0

    Raises:
        GridError: If N*M exceeds size_cap
    """
    N, M = mesh.N, mesh.M
    size = N * M
    if size > size_cap:
        raise GridError(f"Liouville system of size {size} exceeds the cap {size_cap}")
    plan = plan or FluxPlan.build(mesh)

    rows = np.arange(size).reshape(N, M)
    scale = mesh.cell_speed[:, None] * np.sign(mesh.xi_centers)[None, :] / mesh.dx

    parts_rows = [
        np.repeat(rows, 3, axis=1).reshape(N, M, 3),
        np.repeat(rows, 3, axis=1).reshape(N, M, 3),
    ]
    parts_cols = [plan.plus_index[1:], plan.minus_index[:-1]]
    parts_data = [-scale[:, :, None] * plan.plus_weight[1:], scale[:, :, None] * plan.minus_weight[:-1]]

    coefficient = mesh.speed_gradient / (mesh.dx * mesh.dxi)
    if np.any(coefficient):
        weight = coefficient[:, None] * np.abs(mesh.xi_centers)[None, :]
        velocity_nonneg = -weight >= 0
        j = np.broadcast_to(np.arange(M)[None, :], (N, M))
        # backward difference f_ij - f_{i,j-1}, forward f_{i,j+1} - f_ij
        neighbour = np.where(velocity_nonneg, rows - 1, rows + 1)
        has_neighbour = np.where(velocity_nonneg, j > 0, j < M - 1)
        diagonal = np.where(velocity_nonneg, weight, -weight)
        parts_rows += [rows, rows[has_neighbour]]
        parts_cols += [rows, neighbour[has_neighbour]]
        parts_data += [diagonal, -diagonal[has_neighbour]]

    data = np.concatenate([np.ravel(d) for d in parts_data])
    row_index = np.concatenate([np.ravel(r) for r in parts_rows])
    col_index = np.concatenate([np.ravel(c) for c in parts_cols])
    keep = data != 0
    A = sp.coo_matrix((data[keep], (row_index[keep], col_index[keep])), shape=(size, size)).tocsr()

    u0 = initial.flatten() if initial is not None else np.zeros(size)
    return LinearODESystem.constant_system(A, u0)


@dataclass(frozen=True)
class CflReport:
    """Admissible time steps; dt is the one the solver uses."""

    dt: float
    dt_transport: float
    dt_xi: float
    dt_direct_upwind: float


def cfl_timestep(mesh: PhaseMesh, safety: float = 1.0) -> CflReport:
    """
    dt = safety * min(dx / max c_i, dx dxi / (max |c_left[i+1] - c_right[i]| max |xi|)).

    The bound for a direct upwind scheme that differentiates c across the
    jumps, dx dxi / (max jump * max |xi|), is reported alongside.

    Raises:
        ConfigError: If safety is outside (0, 1]
    """
    if not 0 < safety <= 1:
        raise ConfigError(f"CFL safety factor must be in (0, 1], got {safety}")
    xi_max = float(np.max(np.abs(mesh.xi_centers)))
    dt_transport = mesh.dx / float(np.max(mesh.cell_speed))

    gradient = float(np.max(np.abs(mesh.speed_gradient)))
    dt_xi = mesh.dx * mesh.dxi / (gradient * xi_max) if gradient > 0 else math.inf

    jump = float(np.max(np.abs(mesh.c_right - mesh.c_left)))
    dt_jump = mesh.dx * mesh.dxi / (jump * xi_max) if jump > 0 else math.inf

    return CflReport(
        dt=safety * min(dt_transport, dt_xi),
        dt_transport=dt_transport,
        dt_xi=dt_xi,
        dt_direct_upwind=safety * min(dt_transport, dt_jump),
    )


def boundary_mass(values: np.ndarray) -> float:
    """Largest |f| on the outermost ring of cells, where ghost inflow would matter."""
    values = np.abs(np.asarray(values))
    return float(max(values[0].max(), values[-1].max(), values[:, 0].max(), values[:, -1].max()))
