#!/usr/bin/env python3
"""
End-to-end Schrödingerisation of a linear ODE system.

augment -> split -> estimate_left_boundary -> build_pgrid -> warp -> to_fourier
-> evolve -> from_fourier -> recover. Any failure is re-raised as a
PipelineError naming the stage.
"""

from contextlib import contextmanager
from dataclasses import dataclass
from typing import Optional

import numpy as np

from config.constants import SUPPORT_TAIL_TOL
from loggings import log_debug, log_error, log_info, log_warning
from ode_core.spectrum import check_dissipativity
from ode_core.system import LinearODESystem, augment, augmentation_scale, hermitian_split
from utils.errors import ConfigError, PipelineError
from warping.pgrid import PGrid, WarpedField, build_pgrid, warp_initial
from warping.recovery import (
    estimate_left_boundary,
    estimate_left_boundary_over_time,
    left_tail_fraction,
    recover_integral,
    recover_point,
    recovery_threshold,
    right_moving_speed,
)
from warping.schrodinger import assemble_schrodinger, evolve, evolve_time_dependent
from warping.transform import TransformPlan, from_fourier, to_fourier

# Time-dependent speed bounds are sampled at no more than this many step times
_MAX_SPEED_SAMPLES = 64


@dataclass
class SchrodingerResult:
    """Recovered solution and the run's diagnostics."""

    u: np.ndarray
    L: float
    grid: PGrid
    p_kink: float
    recovery_p: float
    augmented: bool
    aux_component: Optional[complex]
    tail_fraction: float
    field: WarpedField


@contextmanager
def _stage(name: str):
    try:
        yield
    except PipelineError:
        raise
    except Exception as e:
        log_error(f"[{name}] {type(e).__name__}: {e}")
        raise PipelineError(name, e) from e


def _sample_times(T: float, Nt: int) -> np.ndarray:
    if Nt <= _MAX_SPEED_SAMPLES:
        return T * np.arange(Nt + 1) / Nt
    return np.linspace(0.0, T, _MAX_SPEED_SAMPLES + 1)


def schrodingerize_and_solve(
    system: LinearODESystem,
    T: float,
    Nt: int,
    Np: int,
    R: float,
    L0: float,
    alpha_neg: float,
    scheme: str = "backward_euler",
    recovery: str = "point",
    speed_bound: str = "gershgorin",
) -> SchrodingerResult:
    """
    Solve du/dt = A(t)u + b(t) up to time T through the Schrödingerised system.

    Args:
        system: Linear ODE system
        T: Final time (> 0)
        Nt: Number of time steps
        Np: Number of p-nodes (even)
        R: Right end of the p-domain
        L0: Left edge of the initial near-support (<= 0)
        alpha_neg: Decay rate of the warped data for p < 0
        scheme: Evolution scheme; time-dependent systems need backward_euler
        recovery: "point" or "integral"
        speed_bound: "gershgorin" or "eigen" for the left-boundary estimate

    Returns:
        SchrodingerResult; u has the original dimension n

    Raises:
        PipelineError: Tagged with the failing stage
    """
    with _stage("augment"):
        if T <= 0:
            raise ConfigError(f"T must be positive, got {T}")
        if recovery not in ("point", "integral"):
            raise ConfigError(f"unknown recovery route '{recovery}'")
        times = _sample_times(T, Nt)
        augmented = not system.zero_b
        scale = 1.0
        work = system
        if augmented:
            scale = augmentation_scale(system, times)
            work = augment(system, scale)
            log_debug(f"augmented to n={work.n} with scale {scale:.6g}")

    with _stage("split"):
        check_dissipativity(hermitian_split(system.A_at(0.0)))
        if work.constant:
            pair = hermitian_split(work.A_at(0.0))
            pair_at = None
        else:
            if scheme != "backward_euler":
                raise ConfigError(f"time-dependent systems support backward_euler only, got {scheme}")
            pair = None
            pair_at = lambda t: hermitian_split(work.A_at(t))

    with _stage("estimate_left_boundary"):
        if pair is not None:
            L = estimate_left_boundary(pair, T, L0, speed_bound)
            right_speed = right_moving_speed(pair)
        else:
            L = estimate_left_boundary_over_time(pair_at, times, T, L0, speed_bound)
            right_speed = max(right_moving_speed(pair_at(t)) for t in times)
        p_kink = right_speed * T
        log_info(f"left boundary L = {L:.4f} (L0 = {L0:g}, T = {T:g}, bound = {speed_bound})")

    with _stage("build_pgrid"):
        grid = build_pgrid(L, R, L0, Np)

    with _stage("warp"):
        w0 = warp_initial(work.u0, grid, alpha_neg)

    with _stage("to_fourier"):
        plan = TransformPlan(grid)
        w_tilde0 = to_fourier(w0, plan)

    with _stage("evolve"):
        if pair is not None:
            w_tilde = evolve(assemble_schrodinger(pair, grid), w_tilde0, T, Nt, scheme)
        else:
            w_tilde = evolve_time_dependent(pair_at, grid, w_tilde0, T, Nt)

    with _stage("from_fourier"):
        w = from_fourier(w_tilde, plan)

    with _stage("recover"):
        threshold = recovery_threshold(p_kink, grid.dp)
        if recovery == "point":
            k = grid.first_node_at_or_above(threshold)
            recovery_p = float(grid.nodes[k])
            u = recover_point(w, grid, k)
        else:
            recovery_p = threshold
            u = recover_integral(w, grid, p_min=threshold)
        tail = left_tail_fraction(w)
        if tail > SUPPORT_TAIL_TOL:
            log_warning(f"warped field reaches the left p-boundary: tail fraction {tail:.3g}")
        aux = None
        if augmented:
            aux = complex(u[-1] / scale)
            u = u[:-1]

    log_info(
        f"schrodingerised solve done: n={system.n}, Np={Np}, Nt={Nt}, scheme={scheme}, "
        f"recovery={recovery} at p={recovery_p:.4g}"
    )
    return SchrodingerResult(
        u=u, L=L, grid=grid, p_kink=p_kink, recovery_p=recovery_p, augmented=augmented,
        aux_component=aux, tail_fraction=tail, field=w,
    )
