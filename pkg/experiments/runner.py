#!/usr/bin/env python3
"""
Run one experiment end to end, or a refinement sweep of it, and persist the results.
"""

import math
import os
from dataclasses import dataclass, field, replace
from typing import Any, Dict, List, Optional

import numpy as np
import pandas as pd

from config.settings import ExperimentConfig, validate_config
from experiments.registry import Problem, build_problem
from liouville.flux import FluxPlan
from liouville.scheme import boundary_mass, cfl_timestep, rhs_values
from loggings import log_info, log_warning
from ode_core.integrate import DIRECT_SCHEMES, direct_integrate, forward_euler_matrix_free
from oracles.norms import ErrorReport, error_norms, observed_order
from pde_builders.interface import interface_flux_gap
from pde_builders.stefan import stefan_jump_residuals
from utils.csv_io import error_frame, phase_frame, profile_frame, write_table
from utils.errors import ConfigError
from utils.plot_script import write_plot_script
from warping.pipeline import schrodingerize_and_solve

# Largest |f| in the outer ring of cells tolerated before the ghost inflow is reported
BOUNDARY_ACTIVITY_TOL = 1e-10
# Negative values above this magnitude count as a positivity violation
POSITIVITY_TOL = 1e-12

SWEEP_COLUMNS = ["level", "nx", "np", "nt", "l_inf", "l2", "l1", "order_l_inf", "order_l1"]


@dataclass
class RunResult:
    """Outcome of run_experiment; `files` lists every path written."""

    config: ExperimentConfig
    u: np.ndarray
    exact: np.ndarray
    errors: ErrorReport
    L: Optional[float] = None
    direct: Optional[np.ndarray] = None
    direct_errors: Optional[ErrorReport] = None
    files: List[str] = field(default_factory=list)
    diagnostics: Dict[str, Any] = field(default_factory=dict)


class _PositivityMonitor:
    """on_step callback for the matrix-free optics run."""

    def __init__(self):
        self.violations = 0
        self.worst = 0.0
        self.boundary_reported = False

    def __call__(self, step: int, t: float, values: np.ndarray):
        low = float(values.min())
        if low < -POSITIVITY_TOL:
            self.violations += 1
            self.worst = min(self.worst, low)
        if not self.boundary_reported and boundary_mass(values) > BOUNDARY_ACTIVITY_TOL:
            self.boundary_reported = True
            log_warning(f"phase-space solution reaches the outer cells at step {step} (t = {t:.4g})")


def _solve_optics_direct(problem: Problem, config: ExperimentConfig, diagnostics: Dict[str, Any]) -> np.ndarray:
    mesh = problem.phase_mesh
    if config.scheme != "forward_euler":
        raise ConfigError(f"the direct optics solver steps with forward_euler, got {config.scheme}")
    cfl = cfl_timestep(mesh, config.safety)
    dt = config.T / config.nt
    diagnostics["cfl_dt"] = cfl.dt
    diagnostics["cfl_dt_direct_upwind"] = cfl.dt_direct_upwind
    if dt > cfl.dt:
        log_warning(f"time step {dt:.4g} exceeds the CFL bound {cfl.dt:.4g}")

    plan = FluxPlan.build(mesh)
    monitor = _PositivityMonitor()
    final = forward_euler_matrix_free(
        lambda values: rhs_values(values, mesh, plan),
        problem.initial_field.values, config.T, config.nt, on_step=monitor,
    )
    diagnostics["positivity_violations"] = monitor.violations
    if monitor.violations:
        log_warning(f"positivity lost on {monitor.violations} steps (min value {monitor.worst:.3g})")
    return final.reshape(-1)


def _solve(problem: Problem, config: ExperimentConfig, result: Dict[str, Any]) -> np.ndarray:
    if config.T == 0:
        return np.array(problem.initial, copy=True)

    if config.solver == "direct":
        if problem.system is None:
            return _solve_optics_direct(problem, config, result["diagnostics"])
        if config.scheme not in DIRECT_SCHEMES:
            raise ConfigError(f"direct solver supports {', '.join(DIRECT_SCHEMES)}, got {config.scheme}")
        return direct_integrate(problem.system, config.scheme, config.T, config.nt, keep_history=False).final

    solution = schrodingerize_and_solve(
        problem.system, config.T, config.nt, config.n_p, config.R, config.l0, config.alpha_neg,
        scheme=config.scheme, recovery=config.recovery, speed_bound=config.speed_bound,
    )
    result["L"] = solution.L
    result["diagnostics"].update({
        "recovery_p": solution.recovery_p,
        "p_kink": solution.p_kink,
        "tail_fraction": solution.tail_fraction,
    })
    if solution.aux_component is not None:
        result["diagnostics"]["aux_component"] = solution.aux_component
    return solution.u


def _experiment_diagnostics(problem: Problem, config: ExperimentConfig, u: np.ndarray) -> Dict[str, Any]:
    diagnostics: Dict[str, Any] = {}
    if config.experiment == "advection-interface":
        gap = interface_flux_gap(u, problem.extras["mesh"], problem.extras["spec"])
        diagnostics["interface_flux_gap"] = gap
        log_info(f"interface flux gap |c- u(0-) - c+ u(0+)| = {gap:.4g}")
    elif config.experiment == "stefan":
        mesh, stefan = problem.extras["mesh"], problem.extras["stefan"]
        nodal = np.concatenate([
            [stefan.dirichlet_left(config.T)], np.real(u), [stefan.dirichlet_right(config.T)],
        ])
        jump_u, jump_flux = stefan_jump_residuals(mesh, stefan, config.T, nodal)
        diagnostics["jump_u"] = jump_u
        diagnostics["jump_flux"] = jump_flux
        log_info(f"Stefan jump residuals at T: [u] = {jump_u:.3g}, [beta u_x] = {jump_flux:.3g}")
    return diagnostics


def run_experiment(config: ExperimentConfig, write: bool = True) -> RunResult:
    """
    Build, solve, compare with the exact solution and write the outputs.

    Files written to config.out: `<experiment>.csv`, `<experiment>_errors.csv`,
    `<experiment>_direct.csv` when compare_oracle is set, and `<experiment>_plot.py`.

    Args:
        config: Validated experiment configuration
        write: If False nothing is written (used by sweeps)

    Returns:
        RunResult

    Raises:
        ConfigError, GridError, PipelineError, NumericalError, OSError
    """
    validate_config(config)
    log_info(
        f"run {config.experiment}: nx={config.nx}, np={config.n_p}, nt={config.nt}, T={config.T:g}, "
        f"solver={config.solver}, scheme={config.scheme}, seed={config.seed}"
    )
    problem = build_problem(config)

    state: Dict[str, Any] = {"L": None, "diagnostics": {}}
    u = _solve(problem, config, state)
    exact = np.asarray(problem.exact(config.T))
    errors = error_norms(u, exact, problem.weights)
    log_info(f"{config.experiment} errors: l_inf={errors.l_inf:.4e}, l2={errors.l2:.4e}, l1={errors.l1:.4e}")

    diagnostics = state["diagnostics"]
    if config.T > 0:
        diagnostics.update(_experiment_diagnostics(problem, config, u))

    direct = None
    direct_errors = None
    if config.compare_oracle and config.solver == "schrodinger" and config.T > 0:
        direct = direct_integrate(problem.system, "backward_euler", config.T, config.nt, keep_history=False).final
        direct_errors = error_norms(direct, exact, problem.weights)
        log_info(f"direct oracle errors: l_inf={direct_errors.l_inf:.4e}")

    result = RunResult(
        config=config, u=u, exact=exact, errors=errors, L=state["L"], direct=direct,
        direct_errors=direct_errors, diagnostics=diagnostics,
    )
    if write:
        result.files = _write_run(problem, result)
    return result


def _write_run(problem: Problem, result: RunResult) -> List[str]:
    config = result.config
    out, name = config.out, config.experiment
    files = []
    result_csv = f"{name}.csv"
    direct_csv = None

    if problem.phase_mesh is not None:
        mesh = problem.phase_mesh
        frame = phase_frame(mesh.x_centers, mesh.xi_centers, result.u, result.exact)
    else:
        frame = profile_frame(problem.x, result.u, result.exact)
    files.append(write_table(frame, os.path.join(out, result_csv)))
    files.append(write_table(error_frame(result.errors), os.path.join(out, f"{name}_errors.csv")))

    if result.direct is not None:
        direct_csv = f"{name}_direct.csv"
        files.append(write_table(profile_frame(problem.x, result.direct, result.exact), os.path.join(out, direct_csv)))

    files.append(write_plot_script(
        os.path.join(out, f"{name}_plot.py"),
        experiment=name, T=config.T, result_csv=result_csv,
        phase_space=problem.phase_mesh is not None, direct_csv=direct_csv,
    ))
    for path in files:
        log_info(f"wrote {path}")
    return files


def refine(config: ExperimentConfig, level: int) -> ExperimentConfig:
    """Config for refinement level `level`: nx, np, nt (and m) doubled per level."""
    factor = 2 ** level
    changes = {"nx": config.nx * factor, "n_p": config.n_p * factor, "nt": config.nt * factor}
    if config.m:
        changes["m"] = config.m * factor
    return replace(config, **changes)


def sweep(config: ExperimentConfig, levels: int, write: bool = True) -> pd.DataFrame:
    """
    Run the experiment on `levels` successively doubled discretisations.

    Returns:
        DataFrame with columns level,nx,np,nt,l_inf,l2,l1,order_l_inf,order_l1;
        orders compare each level with the previous one (NaN on level 0)
    """
    if levels < 1:
        raise ConfigError(f"levels must be at least 1, got {levels}")
    if config.T <= 0:
        raise ConfigError("a sweep needs T > 0")
    width = config.domain[1] - config.domain[0]

    rows = []
    for level in range(levels):
        refined = refine(config, level)
        result = run_experiment(refined, write=False)
        rows.append({
            "level": level, "nx": refined.nx, "np": refined.n_p, "nt": refined.nt,
            "l_inf": result.errors.l_inf, "l2": result.errors.l2, "l1": result.errors.l1,
            "h": width / refined.nx,
        })

    for index, row in enumerate(rows):
        if index == 0:
            row["order_l_inf"] = math.nan
            row["order_l1"] = math.nan
            continue
        previous = rows[index - 1]
        row["order_l_inf"] = _pair_order(previous["l_inf"], row["l_inf"], previous["h"], row["h"])
        row["order_l1"] = _pair_order(previous["l1"], row["l1"], previous["h"], row["h"])

    table = pd.DataFrame(rows, columns=SWEEP_COLUMNS)
    log_info(f"sweep {config.experiment}: {levels} levels, final l_inf={table['l_inf'].iloc[-1]:.4e}")
    if write:
        write_table(table, os.path.join(config.out, f"{config.experiment}_sweep.csv"))
    return table


def _pair_order(e_coarse: float, e_fine: float, h_coarse: float, h_fine: float) -> float:
    if e_coarse <= 0 or e_fine <= 0:
        return math.nan
    return observed_order([e_coarse, e_fine], [h_coarse, h_fine])
