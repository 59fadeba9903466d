#!/usr/bin/env python3
"""
Discrete Fourier transform in p.

The basis is Phi[j][l] = exp(i*mu_l*(p_j - L)) = exp(2*pi*i*j*l/Np) with l in
ascending order -Np/2..Np/2-1, and Phi^{-1} = Phi^H / Np. The FFT route below
applies exactly these matrices with the output permuted to ascending l.
"""

from dataclasses import dataclass

import numpy as np
import scipy.fft

from utils.errors import GridError
from warping.pgrid import PGrid, WarpedField


@dataclass(frozen=True)
class TransformPlan:
    grid: PGrid

    def basis(self) -> np.ndarray:
        """Phi as a dense Np×Np matrix."""
        j = np.arange(self.grid.Np)
        return np.exp(2j * np.pi * np.outer(j, self.grid.mode_indices) / self.grid.Np)

    def inverse_basis(self) -> np.ndarray:
        return self.basis().conj().T / self.grid.Np

    def forward(self, values: np.ndarray) -> np.ndarray:
        """Apply Phi^{-1} to every row of an n×Np array."""
        return scipy.fft.fftshift(scipy.fft.fft(values, axis=1), axes=1) / self.grid.Np

    def inverse(self, coefficients: np.ndarray) -> np.ndarray:
        """Apply Phi to every row of an n×Np array."""
        return self.grid.Np * scipy.fft.ifft(scipy.fft.ifftshift(coefficients, axes=1), axis=1)


def _check(w: WarpedField, plan: TransformPlan, space: str):
    if w.Np != plan.grid.Np:
        raise GridError(f"field has {w.Np} auxiliary nodes, plan expects {plan.grid.Np}")
    if w.space != space:
        raise GridError(f"expected a field in {space} space, got {w.space}")


def to_fourier(w: WarpedField, plan: TransformPlan) -> WarpedField:
    """w~ = (I ⊗ Phi^{-1}) w, one transform per component block."""
    _check(w, plan, "physical")
    return WarpedField(plan.forward(w.values), space="mode")


def from_fourier(w_tilde: WarpedField, plan: TransformPlan) -> WarpedField:
    """w = (I ⊗ Phi) w~."""
    _check(w_tilde, plan, "mode")
    return WarpedField(plan.inverse(w_tilde.values), space="physical")
