#!/usr/bin/env python3
"""
Closed-form solutions for the shipped experiments.

All evaluators are vectorised over x (and xi for the optics problem).
Measure-zero branch boundaries go to the left / lower branch.
"""

import math
from dataclasses import replace
from typing import Callable, Tuple

import numpy as np

from config.constants import STEFAN_ALPHA_OFFSET, STEFAN_ALPHA_SLOPE
from pde_builders.mesh import StefanProblem

# ===== Convection and heat =====


def exact_convection(t: float, x):
    """u(t, x) = exp(x - t)."""
    return np.exp(np.asarray(x, dtype=float) - t)


def exact_heat(t: float, x):
    """u(t, x) = exp(-pi^2 t) sin(pi x)."""
    return np.exp(-math.pi ** 2 * t) * np.sin(math.pi * np.asarray(x, dtype=float))


def exact_heat_flux(t: float, x):
    """u_x of exact_heat, used as the Neumann datum of the mixed problem."""
    return math.pi * np.exp(-math.pi ** 2 * t) * np.cos(math.pi * np.asarray(x, dtype=float))


# ===== Interface advection =====


def cosine_bump(x, a: float):
    """
    Raised cosine 0.5*(1 + cos((s - 0.28)*pi/0.24)) on 0.04 <= s <= 0.52,
    with s = (x + a)/(2a) mapping (-a, a) onto (0, 1).
    """
    s = (np.asarray(x, dtype=float) + a) / (2 * a)
    bump = 0.5 * (1 + np.cos((s - 0.28) * math.pi / 0.24))
    return np.where((s >= 0.04) & (s <= 0.52), bump, 0.0)


def exact_interface_advection(
    t: float,
    x,
    u0: Callable[[np.ndarray], np.ndarray],
    c_minus: float,
    c_plus: float,
    rho: float,
):
    """
    Characteristic solution of u_t + c(x) u_x = 0 with u(0+) = rho u(0-).

    u0(x - c_minus t) for x <= 0, rho u0((c_minus/c_plus) x - c_minus t) for
    0 < x <= c_plus t, and u0(x - c_plus t) beyond.
    """
    x = np.asarray(x, dtype=float)
    left = u0(x - c_minus * t)
    crossed = rho * u0((c_minus / c_plus) * x - c_minus * t)
    right = u0(x - c_plus * t)
    return np.where(x <= 0, left, np.where(x <= c_plus * t, crossed, right))


# ===== Stefan problem =====


def exact_stefan(t: float, x, problem: StefanProblem):
    """
    ((x - alpha)^2 + 1/beta_minus) e^x left of alpha(t);
    ((x - alpha)^2 + 1/beta_plus) e^x + (1/beta_minus - 1/beta_plus) e^alpha right of it.
    """
    x = np.asarray(x, dtype=float)
    alpha = problem.alpha(t)
    shift = (x - alpha) ** 2
    left = (shift + 1 / problem.beta_minus) * np.exp(x)
    right = (shift + 1 / problem.beta_plus) * np.exp(x) + (
        1 / problem.beta_minus - 1 / problem.beta_plus
    ) * math.exp(alpha)
    return np.where(x <= alpha, left, right)


def stefan_source(t: float, x, problem: StefanProblem):
    """f = u_t - (beta u_x)_x for exact_stefan, including the alpha'(t) terms."""
    x = np.asarray(x, dtype=float)
    alpha = problem.alpha(t)
    rate = problem.alpha_rate(t)
    d = x - alpha
    ex = np.exp(x)
    transport = -2 * rate * d * ex
    left = transport - problem.beta_minus * (d ** 2 + 4 * d + 2 + 1 / problem.beta_minus) * ex
    right = (
        transport
        + (1 / problem.beta_minus - 1 / problem.beta_plus) * rate * math.exp(alpha)
        - problem.beta_plus * (d ** 2 + 4 * d + 2 + 1 / problem.beta_plus) * ex
    )
    return np.where(x <= alpha, left, right)


def default_stefan_problem(domain: Tuple[float, float] = (0.0, 10.0), beta: Tuple[float, float] = (1.0, 2.0)) -> StefanProblem:
    """
    alpha(t) = t/2 + 1/4 with the closed-form source and Dirichlet data
    taken from exact_stefan at both ends of the domain.
    """
    a, b = domain
    base = StefanProblem(
        beta_minus=beta[0],
        beta_plus=beta[1],
        alpha=lambda t: STEFAN_ALPHA_SLOPE * t + STEFAN_ALPHA_OFFSET,
        alpha_rate=lambda t: STEFAN_ALPHA_SLOPE,
    )
    return replace(
        base,
        source=lambda t, x: stefan_source(t, x, base),
        dirichlet_left=lambda t: float(exact_stefan(t, a, base)),
        dirichlet_right=lambda t: float(exact_stefan(t, b, base)),
    )


# ===== Geometric optics =====


def _root(value):
    return np.sqrt(np.clip(value, 0.0, None))


def optics_initial(x, xi):
    """Indicator of {x<0, xi>0, x^2 + 4 xi^2 < 1} united with {x>0, xi<0, x^2 + xi^2 < 1}."""
    x = np.asarray(x, dtype=float)
    xi = np.asarray(xi, dtype=float)
    left = (x < 0) & (xi > 0) & (np.sqrt(x ** 2 + 4 * xi ** 2) < 1)
    right = (x > 0) & (xi < 0) & (np.sqrt(x ** 2 + xi ** 2) < 1)
    return np.where(left | right, 1.0, 0.0)


def _optics_regions(x, xi) -> list:
    """The six nonzero regions of the t = 1 optics solution, in priority order."""
    x = np.asarray(x, dtype=float)
    xi = np.asarray(xi, dtype=float)
    upper = _root(1 - (0.2 - x) ** 2)
    third = -_root(1 - (x / 3 + 0.2) ** 2) / 3
    return [
        (0 < x) & (x < 0.2) & (upper < xi) & (xi < 1.5 * _root(1 - (3 * x - 0.6) ** 2)),
        (0 < x) & (x < 0.2) & (0 < xi) & (xi < upper),
        (0 < x) & (x < 0.8) & (-_root(1 - (x + 0.2) ** 2) < xi) & (xi < 0),
        (-0.4 < x) & (x < 0) & (0 < xi) & (xi < 0.5 * _root(1 - (x - 0.6) ** 2)),
        (-0.6 < x) & (x < 0) & (third < xi) & (xi < 0),
        (-0.6 < x) & (x < 0) & (-0.5 * _root(1 - (x + 0.6) ** 2) < xi) & (xi < third),
    ]


def exact_optics_t1(x, xi, a_T: float, a_R: float):
    """f(1, x, xi) for the two-speed (0.6 / 0.2) medium; the first matching region wins."""
    return np.select(_optics_regions(x, xi), [a_T, 1.0, 1.0, 1.0, 1.0, a_R], default=0.0)


def optics_branch_hits(x, xi) -> np.ndarray:
    """How many of the six nonzero regions contain each point."""
    return np.sum([region.astype(int) for region in _optics_regions(x, xi)], axis=0)


def cell_average(func: Callable[[np.ndarray, np.ndarray], np.ndarray], mesh, q: int = 4) -> np.ndarray:
    """
    Cell averages of func(x, xi) on a phase mesh by q×q midpoint sub-sampling.

    Args:
        func: Vectorised map (x, xi) -> value
        mesh: PhaseMesh
        q: Sub-samples per direction

    Returns:
        N×M array
    """
    offsets = ((np.arange(q) + 0.5) / q - 0.5)
    X, XI = np.meshgrid(mesh.x_centers, mesh.xi_centers, indexing="ij")
    total = np.zeros(X.shape)
    for sx in offsets:
        for sxi in offsets:
            total += func(X + sx * mesh.dx, XI + sxi * mesh.dxi)
    return total / q ** 2
