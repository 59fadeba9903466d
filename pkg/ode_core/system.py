#!/usr/bin/env python3
"""
Linear ODE systems du/dt = A(t)u + b(t), their augmentation to homogeneous
form and the Hermitian / anti-Hermitian split A = H1 + iH2.
"""

from dataclasses import dataclass, field
from typing import Callable, Optional, Union

import numpy as np
import scipy.sparse as sp

from config.constants import DENSE_LIMIT
from utils.errors import GridError

Matrix = Union[np.ndarray, sp.spmatrix]
MatrixMap = Callable[[float], Matrix]
VectorMap = Callable[[float], np.ndarray]


def as_matrix(A) -> Matrix:
    """Coerce to a complex CSR matrix or a complex dense array."""
    if sp.issparse(A):
        return sp.csr_matrix(A, dtype=complex)
    return np.asarray(A, dtype=complex)


def to_dense(A: Matrix) -> np.ndarray:
    if sp.issparse(A):
        if A.shape[0] > DENSE_LIMIT:
            raise GridError(f"dense conversion refused for n={A.shape[0]} > {DENSE_LIMIT}")
        return A.toarray()
    return np.asarray(A)


@dataclass(frozen=True)
class LinearODESystem:
    """
    Semi-discrete system du/dt = A(t)u + b(t), u(0) = u0.

    A and b are stored as maps of time. `constant` marks A as time independent,
    `b_constant` does the same for b, and `zero_b` marks b as identically zero.
    Builders hand systems over in sparse CSR form; small systems may be dense.
    """

    n: int
    A: MatrixMap
    u0: np.ndarray
    b: Optional[VectorMap] = None
    constant: bool = False
    b_constant: bool = True
    zero_b: bool = True

    def __post_init__(self):
        u0 = np.asarray(self.u0, dtype=complex).reshape(-1)
        object.__setattr__(self, "u0", u0)
        if self.n <= 0 or u0.shape[0] != self.n:
            raise GridError(f"initial state has length {u0.shape[0]}, expected n={self.n}")
        shape = self.A(0.0).shape
        if shape != (self.n, self.n):
            raise GridError(f"A(t) has shape {shape}, expected ({self.n}, {self.n})")

    @classmethod
    def constant_system(cls, A, u0, b=None) -> "LinearODESystem":
        """
        Build a system with time-independent A.

        Args:
            A: n×n dense or sparse matrix
            u0: initial state
            b: None (identically zero), a fixed vector, or a map t -> vector
        """
        matrix = as_matrix(A)
        b_map, b_constant, zero_b = _vector_map(b, matrix.shape[0])
        return cls(
            n=matrix.shape[0], A=lambda t: matrix, u0=u0, b=b_map,
            constant=True, b_constant=b_constant, zero_b=zero_b,
        )

    @classmethod
    def time_dependent(cls, A_at: MatrixMap, u0, b=None) -> "LinearODESystem":
        """Build a system whose matrix is re-evaluated at every queried time."""
        u0 = np.asarray(u0, dtype=complex).reshape(-1)
        b_map, b_constant, zero_b = _vector_map(b, u0.shape[0])
        return cls(
            n=u0.shape[0], A=lambda t: as_matrix(A_at(t)), u0=u0, b=b_map,
            constant=False, b_constant=b_constant, zero_b=zero_b,
        )

    def A_at(self, t: float) -> Matrix:
        return self.A(t)

    def b_at(self, t: float) -> np.ndarray:
        if self.zero_b or self.b is None:
            return np.zeros(self.n, dtype=complex)
        return np.asarray(self.b(t), dtype=complex).reshape(-1)

    @property
    def is_sparse(self) -> bool:
        return sp.issparse(self.A(0.0))

    def dense(self) -> "LinearODESystem":
        """Same system with dense matrices (n <= DENSE_LIMIT)."""
        A_map = self.A
        if self.constant:
            matrix = to_dense(A_map(0.0))
            dense_map = lambda t: matrix
        else:
            dense_map = lambda t: to_dense(A_map(t))
        return LinearODESystem(
            n=self.n, A=dense_map, u0=self.u0, b=self.b, constant=self.constant,
            b_constant=self.b_constant, zero_b=self.zero_b,
        )


def _vector_map(b, n: int):
    if b is None:
        return None, True, True
    if callable(b):
        return b, False, False
    vector = np.asarray(b, dtype=complex).reshape(-1)
    if vector.shape[0] != n:
        raise GridError(f"b has length {vector.shape[0]}, expected {n}")
    return (lambda t: vector), True, False


@dataclass(frozen=True)
class HermitianPair:
    """A = H1 + iH2 with H1 and H2 Hermitian."""

    H1: Matrix
    H2: Matrix

    @property
    def n(self) -> int:
        return self.H1.shape[0]

    @property
    def is_sparse(self) -> bool:
        return sp.issparse(self.H1)

    def reconstruct(self) -> Matrix:
        return self.H1 + 1j * self.H2


@dataclass(frozen=True)
class Trajectory:
    """Time stamps and the state at each of them (states has one row per time)."""

    times: np.ndarray
    states: np.ndarray = field(repr=False)

    def __post_init__(self):
        if len(self.times) != len(self.states):
            raise GridError("times and states differ in length")
        if len(self.times) > 1 and np.any(np.diff(self.times) <= 0):
            raise GridError("trajectory times must be strictly increasing")

    @property
    def final(self) -> np.ndarray:
        return self.states[-1]


def augment(system: LinearODESystem, scale: float = 1.0) -> LinearODESystem:
    """
    Fold b into the matrix: Ã = [[A, b/scale], [0, 0]], ũ0 = [u0; scale].

    The last component of the exact solution stays equal to `scale` and the
    first n components solve the original system. scale = 1 is the plain
    augmentation; a larger scale keeps the coupling column O(1) when b is large.

    Args:
        system: System to augment (b may be identically zero)
        scale: Value carried by the auxiliary component

    Returns:
        Homogeneous (n+1)-dimensional system
    """
    if scale <= 0:
        raise GridError("augmentation scale must be positive")

    n = system.n
    sparse = system.is_sparse

    def A_tilde(t: float) -> Matrix:
        A = system.A_at(t)
        column = system.b_at(t) / scale
        if sparse:
            return sp.bmat(
                [[A, sp.csr_matrix(column.reshape(-1, 1))],
                 [sp.csr_matrix((1, n), dtype=complex), sp.csr_matrix((1, 1), dtype=complex)]],
                format="csr",
            )
        out = np.zeros((n + 1, n + 1), dtype=complex)
        out[:n, :n] = A
        out[:n, n] = column
        return out

    constant = system.constant and system.b_constant
    if constant:
        fixed = A_tilde(0.0)
        A_map = lambda t: fixed
    else:
        A_map = A_tilde

    return LinearODESystem(
        n=n + 1, A=A_map, u0=np.append(system.u0, scale), b=None,
        constant=constant, b_constant=True, zero_b=True,
    )


def augmentation_scale(system: LinearODESystem, times) -> float:
    """max(1, max_t ||b(t)||_2) over the sampled times."""
    if system.zero_b:
        return 1.0
    peak = max(float(np.linalg.norm(system.b_at(t))) for t in times)
    return max(1.0, peak)


def hermitian_split(A: Matrix) -> HermitianPair:
    """
    Split A into H1 = (A + A†)/2 and H2 = (A − A†)/(2i).

    Raises:
        GridError: If A is not square
    """
    A = as_matrix(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise GridError(f"hermitian_split needs a square matrix, got shape {A.shape}")
    A_dagger = A.conj().T
    H1 = (A + A_dagger) / 2
    H2 = (A - A_dagger) / 2j
    if sp.issparse(A):
        H1, H2 = sp.csr_matrix(H1), sp.csr_matrix(H2)
    return HermitianPair(H1=H1, H2=H2)
