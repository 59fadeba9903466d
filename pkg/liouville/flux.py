#!/usr/bin/env python3
"""
Hamiltonian-preserving numerical flux in x for the Liouville equation.

At an edge where the speed jumps from c_l (left) to c_r (right) a wave keeps
c|xi| constant while crossing, so the value entering one side at velocity
xi_j is a_T times the other side's value at the refracted velocity, linearly
interpolated in xi, plus a_R times this side's own value at -xi_j.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from loggings import log_warning
from liouville.mesh import PhaseField, PhaseMesh
from utils.errors import ConfigError, GridError, TotalInternalReflectionError

_EXACT = 0
_CLAMPED = 1
_OFF_GRID = 2


@dataclass(frozen=True)
class TransmissionCoefficients:
    a_T: float
    a_R: float


def transmission_coefficients(c_minus: float, c_plus: float) -> TransmissionCoefficients:
    """
    a_R = ((c_plus - c_minus)/(c_plus + c_minus))^2 and a_T = 1 - a_R.

    Raises:
        GridError: If either speed is not positive
    """
    if c_minus <= 0 or c_plus <= 0:
        raise GridError(f"speeds must be positive, got {c_minus}, {c_plus}")
    a_R = ((c_plus - c_minus) / (c_plus + c_minus)) ** 2
    return TransmissionCoefficients(a_T=1.0 - a_R, a_R=a_R)


def refracted_velocity_2d(xi1_minus: float, xi2: float, rho: float) -> float:
    """
    Normal velocity after crossing a vertical interface, rho = c_minus/c_plus.

    Returns sqrt(rho^2 xi1^2 + (rho^2 - 1) xi2^2).

    Raises:
        TotalInternalReflectionError: If the radicand is negative
    """
    if xi1_minus <= 0:
        raise ConfigError(f"incident normal velocity must be positive, got {xi1_minus}")
    radicand = rho ** 2 * xi1_minus ** 2 + (rho ** 2 - 1) * xi2 ** 2
    if radicand < 0:
        raise TotalInternalReflectionError(
            f"total internal reflection: radicand {radicand:.6g} for xi1={xi1_minus}, xi2={xi2}, rho={rho}"
        )
    return math.sqrt(radicand)


def _interpolation(mesh: PhaseMesh, xi_prime: np.ndarray):
    """
    Cells and weights of the linear interpolant at xi_prime.

    Between an outer edge and the nearest centre the nearest cell is used
    (clamped); beyond the xi-domain both weights are 0 (off grid).
    """
    centers, dxi, M = mesh.xi_centers, mesh.dxi, mesh.M
    k = np.searchsorted(centers, xi_prime, side="right") - 1
    k0 = np.clip(k, 0, M - 1)
    k1 = np.clip(k + 1, 0, M - 1)
    inside = (k >= 0) & (k < M - 1)
    w0 = np.where(inside, (centers[k1] - xi_prime) / dxi, 1.0)
    w1 = np.where(inside, (xi_prime - centers[k0]) / dxi, 0.0)

    status = np.full(xi_prime.shape, _EXACT)
    last_exact = (k == M - 1) & (xi_prime == centers[-1])
    status[~inside & ~last_exact] = _CLAMPED
    off = (xi_prime < mesh.xi_lo) | (xi_prime > mesh.xi_hi)
    status[off] = _OFF_GRID
    w0 = np.where(off, 0.0, w0)
    w1 = np.where(off, 0.0, w1)
    return k0, k1, w0, w1, status


@dataclass(frozen=True)
class FluxPlan:
    """
    Flux stencils for every edge e = 0..N and velocity j.

    F_plus[e, j] is the flux value on the left side of edge e and F_minus[e, j]
    the value on its right side. Each is a combination of at most three cell
    values: index arrays hold flat positions i*M + j, weight 0 marks a ghost.
    """

    mesh: PhaseMesh
    plus_index: np.ndarray
    plus_weight: np.ndarray
    minus_index: np.ndarray
    minus_weight: np.ndarray
    off_grid: int
    clamped: int

    @classmethod
    def build(cls, mesh: PhaseMesh) -> "FluxPlan":
        N, M = mesh.N, mesh.M
        xi = mesh.xi_centers
        j = np.arange(M)
        mirror = mesh.mirror_index(j)
        positive = xi > 0

        plus_index = np.zeros((N + 1, M, 3), dtype=np.int64)
        plus_weight = np.zeros((N + 1, M, 3))
        minus_index = np.zeros((N + 1, M, 3), dtype=np.int64)
        minus_weight = np.zeros((N + 1, M, 3))
        off_grid = 0
        clamped = 0

        for e in range(N + 1):
            left, right = e - 1, e
            has_left, has_right = left >= 0, right < N
            c_l, c_r = mesh.c_left[e], mesh.c_right[e]
            coefficients = transmission_coefficients(c_l, c_r)

            # velocity j > 0: upwind from the left, the right side receives
            if has_left:
                plus_index[e, positive, 0] = left * M + j[positive]
                plus_weight[e, positive, 0] = 1.0
            # velocity j < 0: upwind from the right, the left side receives
            if has_right:
                minus_index[e, ~positive, 0] = right * M + j[~positive]
                minus_weight[e, ~positive, 0] = 1.0

            for side_positive, source, has_source, target, has_target, ratio, index, weight in (
                (True, left, has_left, right, has_right, c_r / c_l, minus_index, minus_weight),
                (False, right, has_right, left, has_left, c_l / c_r, plus_index, plus_weight),
            ):
                mask = positive if side_positive else ~positive
                js = j[mask]
                if has_source:
                    if c_l == c_r:
                        index[e, mask, 0] = source * M + js
                        weight[e, mask, 0] = coefficients.a_T
                    else:
                        k0, k1, w0, w1, status = _interpolation(mesh, ratio * xi[js])
                        index[e, mask, 0] = source * M + k0
                        index[e, mask, 1] = source * M + k1
                        weight[e, mask, 0] = coefficients.a_T * w0
                        weight[e, mask, 1] = coefficients.a_T * w1
                        off_grid += int(np.sum(status == _OFF_GRID))
                        clamped += int(np.sum(status == _CLAMPED))
                if has_target and coefficients.a_R > 0:
                    index[e, mask, 2] = target * M + mirror[js]
                    weight[e, mask, 2] = coefficients.a_R

        if off_grid:
            log_warning(f"{off_grid} refracted velocities fall outside the xi-domain; transmitted part set to 0")
        if clamped:
            log_warning(f"{clamped} refracted velocities lie beyond the outer xi-centres; interpolation clamped")
        return cls(mesh, plus_index, plus_weight, minus_index, minus_weight, off_grid, clamped)

    def evaluate(self, values: np.ndarray):
        """(F_plus, F_minus), each (N+1)×M, for an N×M array of cell values."""
        flat = np.asarray(values).reshape(-1)
        F_plus = (flat[self.plus_index] * self.plus_weight).sum(axis=-1)
        F_minus = (flat[self.minus_index] * self.minus_weight).sum(axis=-1)
        return F_plus, F_minus


def hp_flux_x(f: PhaseField, i_edge: int, j: int, mesh: PhaseMesh, plan: Optional[FluxPlan] = None):
    """
    Flux values on both sides of one x-edge at velocity xi_j.

    Args:
        f: Phase field
        i_edge: Edge index 0..N (edge e lies between cells e-1 and e)
        j: Velocity index
        mesh: Phase mesh
        plan: Precomputed plan for the mesh, built on demand if omitted

    Returns:
        (f_plus, f_minus): left-side and right-side values
    """
    if not 0 <= i_edge <= mesh.N or not 0 <= j < mesh.M:
        raise GridError(f"edge {i_edge}, velocity {j} outside the {mesh.N}x{mesh.M} mesh")
    plan = plan or FluxPlan.build(mesh)
    flat = np.asarray(f.values).reshape(-1)
    f_plus = float(np.dot(flat[plan.plus_index[i_edge, j]], plan.plus_weight[i_edge, j]))
    f_minus = float(np.dot(flat[plan.minus_index[i_edge, j]], plan.minus_weight[i_edge, j]))
    return f_plus, f_minus


def xi_upwind_difference(values: np.ndarray, mesh: PhaseMesh) -> np.ndarray:
    """Upwind xi-differences for the whole field (zero ghosts beyond the xi-domain)."""
    values = np.asarray(values)
    padded = np.pad(values, ((0, 0), (1, 1)))
    backward = values - padded[:, :-2]
    forward = padded[:, 2:] - values
    # xi-velocity of the bicharacteristics is -c_x |xi|
    velocity = -mesh.speed_gradient[:, None] * np.abs(mesh.xi_centers)[None, :]
    return np.where(velocity >= 0, backward, forward)


def xi_flux_difference(f: PhaseField, i: int, j: int, mesh: PhaseMesh) -> float:
    """
    f_ij - f_{i,j-1} when the xi-velocity is non-negative, else f_{i,j+1} - f_ij.
    """
    values = np.asarray(f.values)
    velocity = -mesh.speed_gradient[i] * abs(mesh.xi_centers[j])
    if velocity >= 0:
        below = values[i, j - 1] if j > 0 else 0.0
        return float(values[i, j] - below)
    above = values[i, j + 1] if j < mesh.M - 1 else 0.0
    return float(above - values[i, j])


def interface_relation_residual(f: PhaseField, mesh: PhaseMesh, plan: Optional[FluxPlan] = None) -> float:
    """
    Largest mismatch between the plan's interface fluxes and an independent
    evaluation of a_T * (interpolated refracted value) + a_R * (mirrored value).

    Only edges with a speed jump and refracted velocities between the outer
    xi-centres are checked.
    """
    plan = plan or FluxPlan.build(mesh)
    values = np.asarray(f.values)
    F_plus, F_minus = plan.evaluate(values)
    xi = mesh.xi_centers
    worst = 0.0
    for e in range(1, mesh.N):
        c_l, c_r = mesh.c_left[e], mesh.c_right[e]
        if c_l == c_r:
            continue
        coefficients = transmission_coefficients(c_l, c_r)
        for j in range(mesh.M):
            if xi[j] > 0:
                xi_prime, source, target, received = (c_r / c_l) * xi[j], e - 1, e, F_minus[e, j]
            else:
                xi_prime, source, target, received = (c_l / c_r) * xi[j], e, e - 1, F_plus[e, j]
            if not xi[0] <= xi_prime <= xi[-1]:
                continue
            expected = (
                coefficients.a_T * np.interp(xi_prime, xi, values[source])
                + coefficients.a_R * values[target, mesh.mirror_index(j)]
            )
            worst = max(worst, abs(received - expected))
    return float(worst)
