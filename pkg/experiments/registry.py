#!/usr/bin/env python3
"""
Experiment registry: turns an ExperimentConfig into a ready-to-solve problem
(system or phase mesh, output points, exact solution, norm weights).
"""

import math
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Optional

import numpy as np

from config.constants import SCHRODINGER_STATE_CAP
from config.settings import ExperimentConfig
from liouville.flux import transmission_coefficients
from liouville.mesh import PhaseField, PhaseMesh
from liouville.scheme import assemble_liouville_matrix
from ode_core.system import LinearODESystem
from oracles.exact import (
    cell_average,
    cosine_bump,
    exact_convection,
    exact_heat,
    exact_heat_flux,
    exact_interface_advection,
    exact_optics_t1,
    exact_stefan,
    optics_initial,
    default_stefan_problem,
)
from pde_builders.convection import build_convection_inflow
from pde_builders.heat import build_heat_dirichlet, build_heat_mixed
from pde_builders.interface import build_advection_interface
from pde_builders.mesh import InterfaceSpec, Mesh1D
from pde_builders.stefan import build_stefan
from utils.errors import ConfigError, GridError

# Boundary values below this are treated as homogeneous
_ZERO_BOUNDARY = 1e-12
# Sub-samples per direction for optics cell averages
OPTICS_SUBSAMPLES = 4


@dataclass
class Problem:
    """
    A discretised experiment.

    `system` is None only for the matrix-free optics run; `phase_mesh` is set
    for optics-hp. `exact(t)` returns the reference on the same points as the
    numerical solution.
    """

    experiment: str
    system: Optional[LinearODESystem]
    x: np.ndarray
    exact: Callable[[float], np.ndarray]
    weights: Any
    phase_mesh: Optional[PhaseMesh] = None
    initial_field: Optional[PhaseField] = None
    extras: Dict[str, Any] = field(default_factory=dict)

    @property
    def initial(self) -> np.ndarray:
        if self.system is not None:
            return self.system.u0
        return self.initial_field.flatten()


def _homogeneous(value: float) -> bool:
    return abs(value) < _ZERO_BOUNDARY


def build_convection(config: ExperimentConfig) -> Problem:
    a, b = config.domain
    mesh = Mesh1D(a, b, config.nx)
    x = mesh.nodes[1:]
    system = build_convection_inflow(
        mesh, inflow=lambda t: float(exact_convection(t, a)), initial=lambda s: exact_convection(0.0, s)
    )
    return Problem(config.experiment, system, x, lambda t: exact_convection(t, x), mesh.dx, extras={"mesh": mesh})


def build_heat_dirichlet_problem(config: ExperimentConfig) -> Problem:
    a, b = config.domain
    mesh = Mesh1D(a, b, config.nx)
    x = mesh.nodes[1:-1]
    # sin(pi x) vanishes at integer ends, giving the homogeneous problem
    g_left = None if _homogeneous(math.sin(math.pi * a)) else (lambda t: float(exact_heat(t, a)))
    g_right = None if _homogeneous(math.sin(math.pi * b)) else (lambda t: float(exact_heat(t, b)))
    system = build_heat_dirichlet(mesh, g_left, g_right, initial=lambda s: exact_heat(0.0, s))
    return Problem(config.experiment, system, x, lambda t: exact_heat(t, x), mesh.dx, extras={"mesh": mesh})


def build_heat_mixed_problem(config: ExperimentConfig) -> Problem:
    a, b = config.domain
    mesh = Mesh1D(a, b, config.nx)
    x = mesh.nodes[1:]
    g = None if _homogeneous(math.sin(math.pi * a)) else (lambda t: float(exact_heat(t, a)))
    system = build_heat_mixed(
        mesh, g, lambda t: float(exact_heat_flux(t, b)), initial=lambda s: exact_heat(0.0, s)
    )
    return Problem(config.experiment, system, x, lambda t: exact_heat(t, x), mesh.dx, extras={"mesh": mesh})


def build_interface_problem(config: ExperimentConfig) -> Problem:
    lo, hi = config.domain
    if not math.isclose(lo, -hi):
        raise ConfigError(f"advection-interface needs a symmetric domain [-a, a], got {config.domain}")
    a = hi
    # nx cells on each side of the interface
    mesh = Mesh1D(-a, a, 2 * config.nx)
    spec = InterfaceSpec(c_minus=config.c_minus, c_plus=config.c_plus, continuity=config.continuity)
    u0 = lambda s: cosine_bump(s, a)
    system = build_advection_interface(mesh, spec, inflow=None, initial=u0)
    x = mesh.nodes[1:]

    def exact(t: float) -> np.ndarray:
        return exact_interface_advection(t, x, u0, spec.c_minus, spec.c_plus, spec.rho)

    return Problem(config.experiment, system, x, exact, mesh.dx, extras={"mesh": mesh, "spec": spec})


def build_stefan_problem(config: ExperimentConfig) -> Problem:
    a, b = config.domain
    mesh = Mesh1D(a, b, config.nx)
    problem = default_stefan_problem((a, b), (config.beta_minus, config.beta_plus))
    x = mesh.nodes[1:-1]
    system = build_stefan(mesh, problem, initial=lambda s: exact_stefan(0.0, s, problem))
    return Problem(
        config.experiment, system, x, lambda t: exact_stefan(t, x, problem), mesh.dx,
        extras={"mesh": mesh, "stefan": problem},
    )


def build_optics_problem(config: ExperimentConfig) -> Problem:
    mesh = PhaseMesh.two_speed(config.domain, config.nx, config.xi_domain, config.m, config.c_minus, config.c_plus)
    coefficients = transmission_coefficients(config.c_minus, config.c_plus)
    initial = PhaseField(cell_average(optics_initial, mesh, OPTICS_SUBSAMPLES))

    def exact(t: float) -> np.ndarray:
        if t == 0:
            return initial.values
        if math.isclose(t, 1.0):
            return cell_average(
                lambda x, xi: exact_optics_t1(x, xi, coefficients.a_T, coefficients.a_R), mesh, OPTICS_SUBSAMPLES
            )
        raise ConfigError(f"optics-hp has a closed-form reference only at T = 0 and T = 1, got T = {t}")

    system = None
    if config.solver == "schrodinger":
        if mesh.size > SCHRODINGER_STATE_CAP:
            raise GridError(
                f"Schrödingerised optics run needs N*M <= {SCHRODINGER_STATE_CAP}, got {mesh.size}; "
                f"reduce --nx/--m or use --solver direct"
            )
        system = assemble_liouville_matrix(mesh, initial)
    return Problem(
        config.experiment, system, mesh.x_centers, exact, mesh.dx * mesh.dxi,
        phase_mesh=mesh, initial_field=initial, extras={"coefficients": coefficients},
    )


BUILDERS: Dict[str, Callable[[ExperimentConfig], Problem]] = {
    "convection-inflow": build_convection,
    "heat-dirichlet": build_heat_dirichlet_problem,
    "heat-mixed": build_heat_mixed_problem,
    "advection-interface": build_interface_problem,
    "stefan": build_stefan_problem,
    "optics-hp": build_optics_problem,
}


def build_problem(config: ExperimentConfig) -> Problem:
    try:
        builder = BUILDERS[config.experiment]
    except KeyError:
        raise ConfigError(f"unknown experiment '{config.experiment}'")
    return builder(config)
