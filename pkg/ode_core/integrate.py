#!/usr/bin/env python3
"""
Direct classical time integration of du/dt = A(t)u + b(t).

Serves as the independent oracle for the Schrödingerised solver.
"""

from typing import Callable, Optional

import numpy as np
import scipy.linalg as la
import scipy.sparse as sp
from scipy.sparse.linalg import splu

from loggings import log_debug
from ode_core.system import LinearODESystem, Matrix, Trajectory
from utils.errors import ConfigError, SingularSolveError

DIRECT_SCHEMES = ("backward_euler", "forward_euler")


class _ShiftedSolver:
    """Solves (I - dt*A) x = rhs, factorising once."""

    def __init__(self, A: Matrix, dt: float, step: int):
        n = A.shape[0]
        if sp.issparse(A):
            self._sparse = True
            M = (sp.identity(n, dtype=complex, format="csc") - dt * A).tocsc()
            try:
                self._lu = splu(M)
            except RuntimeError as e:
                raise SingularSolveError(step, detail=str(e)) from e
        else:
            self._sparse = False
            M = np.eye(n, dtype=complex) - dt * np.asarray(A)
            lu, piv = la.lu_factor(M, check_finite=False)
            if np.any(np.diag(lu) == 0):
                raise SingularSolveError(step, detail="zero pivot")
            self._lu = (lu, piv)

    def solve(self, rhs: np.ndarray) -> np.ndarray:
        if self._sparse:
            return self._lu.solve(rhs)
        return la.lu_solve(self._lu, rhs, check_finite=False)


def direct_integrate(
    system: LinearODESystem,
    scheme: str,
    T: float,
    Nt: int,
    keep_history: bool = True,
) -> Trajectory:
    """
    Integrate the system with a uniform step dt = T/Nt.

    Backward Euler solves (I - dt A(t_{m+1})) u^{m+1} = u^m + dt b(t_{m+1});
    forward Euler sets u^{m+1} = u^m + dt (A(t_m) u^m + b(t_m)).

    Args:
        system: System to integrate
        scheme: "backward_euler" or "forward_euler"
        T: Final time (> 0)
        Nt: Number of steps (>= 1)
        keep_history: If False, only the initial and final states are kept

    Returns:
        Trajectory with Nt+1 states (or 2 when keep_history is False)

    Raises:
        SingularSolveError: If a backward Euler system is singular (carries the step index)
    """
    if scheme not in DIRECT_SCHEMES:
        raise ConfigError(f"unknown direct scheme '{scheme}'")
    if T <= 0:
        raise ConfigError(f"T must be positive, got {T}")
    if Nt < 1:
        raise ConfigError(f"Nt must be at least 1, got {Nt}")

    dt = T / Nt
    times = dt * np.arange(Nt + 1)
    times[-1] = T
    u = system.u0.copy()
    history = [u.copy()] if keep_history else None

    solver = None
    if scheme == "backward_euler" and system.constant:
        solver = _ShiftedSolver(system.A_at(0.0), dt, step=1)

    for m in range(Nt):
        if scheme == "backward_euler":
            t_next = times[m + 1]
            rhs = u + dt * system.b_at(t_next)
            step_solver = solver or _ShiftedSolver(system.A_at(t_next), dt, step=m + 1)
            u = step_solver.solve(rhs)
        else:
            t = times[m]
            u = u + dt * (system.A_at(t) @ u + system.b_at(t))
        if keep_history:
            history.append(u.copy())

    log_debug(f"direct_integrate: {scheme}, n={system.n}, T={T:g}, Nt={Nt}")
    if keep_history:
        return Trajectory(times=times, states=np.array(history))
    return Trajectory(times=np.array([0.0, T]), states=np.array([system.u0, u]))


def forward_euler_matrix_free(
    rhs: Callable[[np.ndarray], np.ndarray],
    u0: np.ndarray,
    T: float,
    Nt: int,
    on_step: Optional[Callable[[int, float, np.ndarray], None]] = None,
) -> np.ndarray:
    """
    Forward Euler for du/dt = rhs(u) without forming a matrix.

    Args:
        rhs: Right-hand side evaluator
        u0: Initial state (any shape rhs accepts)
        T: Final time
        Nt: Number of steps
        on_step: Optional callback(step, time, state) after every step

    Returns:
        State at time T
    """
    if T <= 0 or Nt < 1:
        raise ConfigError(f"need T > 0 and Nt >= 1, got T={T}, Nt={Nt}")
    dt = T / Nt
    u = np.array(u0, copy=True)
    for m in range(Nt):
        u = u + dt * rhs(u)
        if on_step is not None:
            on_step(m + 1, (m + 1) * dt, u)
    return u
