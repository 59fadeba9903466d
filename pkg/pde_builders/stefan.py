#!/usr/bin/env python3
"""
Immersed-interface discretisation of u_t = (beta u_x)_x + f with a moving interface.

Away from the interface row i reads (beta_{i-1/2} u_{i-1} - (beta_{i-1/2} +
beta_{i+1/2}) u_i + beta_{i+1/2} u_{i+1})/h^2. The two rows k, k+1 with
x_k <= alpha(t) < x_{k+1} use modified coefficients that keep [u] = 0 and
[beta u_x] = 0 built into the stencil.
"""

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
import scipy.sparse as sp

from ode_core.system import LinearODESystem
from pde_builders.mesh import Mesh1D, StefanProblem
from utils.errors import GridError, InterfacePositivityError


@dataclass(frozen=True)
class StefanCoefficients:
    """
    Stencil triples for rows i = 1..N-1 (gamma[i-1] = (gamma_i1, gamma_i2, gamma_i3))
    and the interface-cell data.
    """

    t: float
    alpha: float
    k: int
    gamma: np.ndarray
    D_k: float
    D_k1: float


def locate_interface(mesh: Mesh1D, alpha: float) -> int:
    """k with x_k <= alpha < x_{k+1}."""
    if not mesh.a < alpha < mesh.b:
        raise GridError(f"interface position {alpha:.6g} is outside ({mesh.a}, {mesh.b})")
    k = int(np.searchsorted(mesh.nodes, alpha, side="right")) - 1
    return min(max(k, 0), mesh.Nx - 1)


def stefan_coefficients(mesh: Mesh1D, problem: StefanProblem, t: float) -> StefanCoefficients:
    """
    Stencil coefficients at time t.

    Args:
        mesh: Mesh with h = dx and N = Nx cells
        problem: Stefan coefficients and interface path
        t: Time

    Returns:
        StefanCoefficients

    Raises:
        GridError: If alpha(t) leaves (a, b)
        InterfacePositivityError: If D_k or D_{k+1} is not positive
    """
    N, h, x = mesh.Nx, mesh.dx, mesh.nodes
    beta_m, beta_p, jump = problem.beta_minus, problem.beta_plus, problem.beta_jump
    alpha = float(problem.alpha(t))
    k = locate_interface(mesh, alpha)

    half = x[:-1] + h / 2
    beta_half = np.where(half < alpha, beta_m, beta_p)
    rows = np.arange(1, N)
    gamma = np.empty((N - 1, 3))
    gamma[:, 0] = beta_half[rows - 1] / h ** 2
    gamma[:, 2] = beta_half[rows] / h ** 2
    gamma[:, 1] = -(gamma[:, 0] + gamma[:, 2])

    D_k = h ** 2 + jump * (x[k - 1] - alpha) * (x[k] - alpha) / (2 * beta_m) if k >= 1 else h ** 2
    D_k1 = h ** 2 - jump * (x[k + 2] - alpha) * (x[k + 1] - alpha) / (2 * beta_p) if k + 2 <= N else h ** 2

    if 1 <= k <= N - 1:
        if D_k <= 0:
            raise InterfacePositivityError(t, k, D_k)
        gamma[k - 1] = (
            (beta_m - jump * (x[k] - alpha) / h) / D_k,
            (-2 * beta_m + jump * (x[k - 1] - alpha) / h) / D_k,
            beta_p / D_k,
        )
    if 1 <= k + 1 <= N - 1:
        if D_k1 <= 0:
            raise InterfacePositivityError(t, k + 1, D_k1)
        gamma[k] = (
            beta_m / D_k1,
            (-2 * beta_p + jump * (x[k + 2] - alpha) / h) / D_k1,
            (beta_p - jump * (x[k + 1] - alpha) / h) / D_k1,
        )

    return StefanCoefficients(t=float(t), alpha=alpha, k=k, gamma=gamma, D_k=float(D_k), D_k1=float(D_k1))


def stefan_matrix(coefficients: StefanCoefficients) -> sp.csr_matrix:
    gamma = coefficients.gamma
    n = gamma.shape[0]
    return sp.csr_matrix(
        sp.diags([gamma[1:, 0], gamma[:, 1], gamma[:-1, 2]], [-1, 0, 1], shape=(n, n)), dtype=complex
    )


def build_stefan(
    mesh: Mesh1D,
    problem: StefanProblem,
    initial: Optional[Callable[[np.ndarray], np.ndarray]] = None,
) -> LinearODESystem:
    """
    Time-dependent system for the N-1 interior unknowns.

    A(t) is tridiagonal from the gamma triples at t and
    b(t) = [gamma_11 u_a + f_1, f_2, ..., gamma_{N-1,3} u_b + f_{N-1}].
    Coefficients are recomputed on every call; nothing is cached by t.
    """
    if mesh.Nx < 3:
        raise GridError(f"Stefan mesh needs at least 3 cells, got {mesh.Nx}")
    x = mesh.nodes[1:-1]
    n = mesh.Nx - 1
    u0 = initial(x) if initial is not None else np.zeros(n)

    def A_at(t: float) -> sp.csr_matrix:
        return stefan_matrix(stefan_coefficients(mesh, problem, t))

    has_b = problem.source is not None or problem.dirichlet_left is not None or problem.dirichlet_right is not None
    b = None
    if has_b:
        def b(t: float) -> np.ndarray:
            out = np.zeros(n, dtype=complex)
            if problem.source is not None:
                out += problem.source(t, x)
            if problem.dirichlet_left is not None or problem.dirichlet_right is not None:
                gamma = stefan_coefficients(mesh, problem, t).gamma
                if problem.dirichlet_left is not None:
                    out[0] += gamma[0, 0] * problem.dirichlet_left(t)
                if problem.dirichlet_right is not None:
                    out[-1] += gamma[-1, 2] * problem.dirichlet_right(t)
            return out

    return LinearODESystem.time_dependent(A_at, u0, b)


def stefan_jump_residuals(mesh: Mesh1D, problem: StefanProblem, t: float, u_nodes: np.ndarray):
    """
    One-sided linear extrapolations of a nodal solution to alpha(t).

    Args:
        mesh: Mesh the solution lives on
        problem: Stefan problem
        t: Time of the snapshot
        u_nodes: Values at all N+1 nodes (boundary values included)

    Returns:
        (jump_u, jump_flux) = (u(alpha+) - u(alpha-), beta+ u_x(alpha+) - beta- u_x(alpha-))
    """
    u = np.real(np.asarray(u_nodes)).reshape(-1)
    if u.shape[0] != mesh.Nx + 1:
        raise GridError(f"expected {mesh.Nx + 1} nodal values, got {u.shape[0]}")
    h, x = mesh.dx, mesh.nodes
    alpha = float(problem.alpha(t))
    k = locate_interface(mesh, alpha)
    if k < 1 or k + 2 > mesh.Nx:
        raise GridError(f"interface cell k={k} has no two-node neighbourhood on each side")

    slope_left = (u[k] - u[k - 1]) / h
    slope_right = (u[k + 2] - u[k + 1]) / h
    left = u[k] + slope_left * (alpha - x[k])
    right = u[k + 1] + slope_right * (alpha - x[k + 1])
    jump_u = right - left
    jump_flux = problem.beta_plus * slope_right - problem.beta_minus * slope_left
    return float(jump_u), float(jump_flux)
