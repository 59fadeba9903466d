#!/usr/bin/env python3
"""
The Schrödingerised system in Fourier space and its time evolution.

In mode space the system d/dt w~ = -i(H1 ⊗ D_mu) w~ + i(H2 ⊗ I) w~ decouples
into one n×n block B_l = -i*mu_l*H1 + i*H2 per mode. Blocks are never coupled,
so evolution runs mode by mode and may be spread over worker threads.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np
import scipy.linalg as la
import scipy.sparse as sp
from scipy.sparse.linalg import norm as sparse_norm, splu

from config.constants import DENSE_LIMIT, EXACT_EXPONENTIAL_LIMIT, STABILITY_WARN_THRESHOLD
from config.settings import num_threads
from loggings import log_debug, log_warning
from ode_core.system import HermitianPair, to_dense
from utils.errors import ConfigError, GridError, SingularSolveError
from warping.pgrid import PGrid, WarpedField

EVOLVE_SCHEMES = ("backward_euler", "forward_euler", "exact_block_exponential")


@dataclass(frozen=True)
class SchrodingerSystem:
    pair: HermitianPair
    grid: PGrid

    @property
    def n(self) -> int:
        return self.pair.n

    def block(self, k: int):
        """B_l for the k-th mode in grid order (l = k - Np/2)."""
        mu = self.grid.modes[k]
        return -1j * mu * self.pair.H1 + 1j * self.pair.H2

    def iter_blocks(self) -> Iterator:
        for k in range(self.grid.Np):
            yield self.block(k)

    def apply(self, values: np.ndarray) -> np.ndarray:
        """Apply the block-diagonal generator to an n×Np mode-space array."""
        H1v = self.pair.H1 @ values
        H2v = self.pair.H2 @ values
        return -1j * np.asarray(H1v) * self.grid.modes[None, :] + 1j * np.asarray(H2v)

    def hamiltonian(self) -> sp.csr_matrix:
        """H = H1 ⊗ D_mu - H2 ⊗ I in the component-major layout."""
        D_mu = sp.diags(self.grid.modes)
        identity = sp.identity(self.grid.Np)
        return sp.csr_matrix(
            sp.kron(sp.csr_matrix(self.pair.H1), D_mu) - sp.kron(sp.csr_matrix(self.pair.H2), identity)
        )

    def generator(self) -> sp.csr_matrix:
        """-iH, the full (n*Np)-dimensional generator."""
        return sp.csr_matrix(-1j * self.hamiltonian())


def assemble_schrodinger(pair: HermitianPair, grid: PGrid) -> SchrodingerSystem:
    return SchrodingerSystem(pair=pair, grid=grid)


def _two_norm(H) -> float:
    if sp.issparse(H):
        if H.shape[0] <= DENSE_LIMIT:
            return float(np.linalg.norm(H.toarray(), 2))
        # 1-norm bound for large sparse Hermitian matrices
        return float(sparse_norm(H, 1))
    return float(np.linalg.norm(np.asarray(H), 2))


def forward_euler_stability_bound(system: SchrodingerSystem, dt: float) -> float:
    """dt * (max_l |mu_l| * ||H1||_2 + ||H2||_2), an upper bound on dt * max_l ||B_l||_2."""
    mu_max = float(np.max(np.abs(system.grid.modes)))
    return dt * (mu_max * _two_norm(system.pair.H1) + _two_norm(system.pair.H2))


def _dense_block(block) -> np.ndarray:
    return to_dense(block) if sp.issparse(block) else np.asarray(block)


def _evolve_mode_backward(system: SchrodingerSystem, k: int, column: np.ndarray, dt: float, Nt: int) -> np.ndarray:
    n = system.n
    block = system.block(k)
    mode = int(system.grid.mode_indices[k])
    if sp.issparse(block):
        M = (sp.identity(n, dtype=complex, format="csc") - dt * block).tocsc()
        try:
            lu = splu(M)
        except RuntimeError as e:
            raise SingularSolveError(1, mode, str(e)) from e
        solve = lu.solve
    else:
        M = np.eye(n, dtype=complex) - dt * block
        factors = la.lu_factor(M, check_finite=False)
        if np.any(np.diag(factors[0]) == 0):
            raise SingularSolveError(1, mode, "zero pivot")
        solve = lambda rhs: la.lu_solve(factors, rhs, check_finite=False)
    for _ in range(Nt):
        column = solve(column)
    return column


def _evolve_mode_exact(system: SchrodingerSystem, k: int, column: np.ndarray, T: float) -> np.ndarray:
    # i*B_l = mu_l*H1 - H2 is Hermitian, so exp(T*B_l) = Q exp(-i*T*Lambda) Q^H
    mu = system.grid.modes[k]
    hermitian = mu * _dense_block(system.pair.H1) - _dense_block(system.pair.H2)
    eigenvalues, Q = la.eigh(hermitian)
    return Q @ (np.exp(-1j * T * eigenvalues) * (Q.conj().T @ column))


def _map_modes(worker: Callable[[int], np.ndarray], Np: int, out: np.ndarray):
    threads = min(num_threads(), Np)
    if threads <= 1:
        for k in range(Np):
            out[:, k] = worker(k)
        return
    with ThreadPoolExecutor(max_workers=threads) as pool:
        for k, column in zip(range(Np), pool.map(worker, range(Np))):
            out[:, k] = column


def evolve(system: SchrodingerSystem, w_tilde0: WarpedField, T: float, Nt: int, scheme: str) -> WarpedField:
    """
    Evolve the mode-space field from 0 to T.

    Backward Euler solves (I - dt*B_l) w_l^{m+1} = w_l^m, forward Euler applies
    (I + dt*B_l), and exact_block_exponential applies exp(T*B_l) in one step.

    Args:
        system: Assembled Schrödinger system
        w_tilde0: Initial field in mode space
        T: Final time (T = 0 returns the input unchanged)
        Nt: Number of time steps (ignored by exact_block_exponential)
        scheme: "backward_euler", "forward_euler" or "exact_block_exponential"

    Returns:
        Mode-space field at time T

    Raises:
        SingularSolveError: Carries the mode index of a singular block
    """
    if scheme not in EVOLVE_SCHEMES:
        raise ConfigError(f"unknown evolution scheme '{scheme}'")
    if w_tilde0.space != "mode":
        raise GridError("evolve expects a field in mode space")
    if w_tilde0.n != system.n or w_tilde0.Np != system.grid.Np:
        raise GridError(
            f"field shape {w_tilde0.values.shape} does not match system ({system.n}, {system.grid.Np})"
        )
    if T == 0:
        return w_tilde0.copy()
    if T < 0:
        raise ConfigError(f"T must be non-negative, got {T}")

    values = w_tilde0.values
    out = np.empty_like(values)

    if scheme == "exact_block_exponential":
        if system.n > EXACT_EXPONENTIAL_LIMIT:
            log_warning(f"exact_block_exponential on n={system.n} (intended for n <= {EXACT_EXPONENTIAL_LIMIT})")
        _map_modes(lambda k: _evolve_mode_exact(system, k, values[:, k], T), system.grid.Np, out)
        return WarpedField(out, space="mode")

    if Nt < 1:
        raise ConfigError(f"Nt must be at least 1, got {Nt}")
    dt = T / Nt

    if scheme == "forward_euler":
        bound = forward_euler_stability_bound(system, dt)
        log_debug(f"forward Euler stability bound {bound:.4g}")
        if bound > STABILITY_WARN_THRESHOLD:
            log_warning(f"forward Euler stability bound {bound:.4g} exceeds {STABILITY_WARN_THRESHOLD:g}")
        current = values.copy()
        for _ in range(Nt):
            current = current + dt * system.apply(current)
        return WarpedField(current, space="mode")

    _map_modes(lambda k: _evolve_mode_backward(system, k, values[:, k], dt, Nt), system.grid.Np, out)
    return WarpedField(out, space="mode")


def _stacked_step_matrix(pair: HermitianPair, grid: PGrid, dt: float) -> sp.csc_matrix:
    # Mode-major block diagonal: block l is I - dt*B_l
    n = pair.n
    H1 = sp.csr_matrix(pair.H1)
    H2 = sp.csr_matrix(pair.H2)
    generator = (
        -1j * sp.kron(sp.diags(grid.modes), H1) + 1j * sp.kron(sp.identity(grid.Np), H2)
    )
    return (sp.identity(n * grid.Np, dtype=complex) - dt * generator).tocsc()


def _locate_singular_mode(pair: HermitianPair, grid: PGrid, dt: float):
    system = SchrodingerSystem(pair, grid)
    for k in range(grid.Np):
        block = sp.csc_matrix(sp.identity(pair.n, dtype=complex) - dt * sp.csr_matrix(system.block(k)))
        try:
            splu(block)
        except RuntimeError:
            return int(grid.mode_indices[k])
    return None


def evolve_time_dependent(
    pair_at: Callable[[float], HermitianPair],
    grid: PGrid,
    w_tilde0: WarpedField,
    T: float,
    Nt: int,
    constant: bool = False,
) -> WarpedField:
    """
    Backward Euler with the blocks rebuilt from pair_at(t_{m+1}) at every step.

    Args:
        pair_at: Map t -> HermitianPair
        grid: Auxiliary grid
        w_tilde0: Initial field in mode space
        T: Final time
        Nt: Number of steps
        constant: If True the map is time independent and the constant path is used

    Returns:
        Mode-space field at time T
    """
    if constant:
        return evolve(SchrodingerSystem(pair_at(0.0), grid), w_tilde0, T, Nt, "backward_euler")
    if w_tilde0.space != "mode":
        raise GridError("evolve_time_dependent expects a field in mode space")
    if T == 0:
        return w_tilde0.copy()
    if Nt < 1:
        raise ConfigError(f"Nt must be at least 1, got {Nt}")

    dt = T / Nt
    n, Np = w_tilde0.n, grid.Np
    # Mode-major stacking so each block of the step matrix is contiguous
    state = w_tilde0.values.T.reshape(-1).copy()
    for m in range(Nt):
        t_next = T if m == Nt - 1 else (m + 1) * dt
        pair = pair_at(t_next)
        if pair.n != n:
            raise GridError(f"pair_at({t_next:g}) has n={pair.n}, field has n={n}")
        try:
            lu = splu(_stacked_step_matrix(pair, grid, dt))
        except RuntimeError as e:
            raise SingularSolveError(m + 1, _locate_singular_mode(pair, grid, dt), str(e)) from e
        state = lu.solve(state)
    log_debug(f"evolve_time_dependent: n={n}, Np={Np}, Nt={Nt}")
    return WarpedField(state.reshape(Np, n).T.copy(), space="mode")
