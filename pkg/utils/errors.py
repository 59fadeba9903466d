#!/usr/bin/env python3
"""
Exception hierarchy shared by the library and the command-line runner.

Every exception carries enough context (step, mode, stage) to be reported
as a one-line diagnostic, and maps to a CLI exit code.
"""

from typing import Optional

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_NUMERICAL = 2
EXIT_IO = 3


class SchrodingerisationError(Exception):
    """Base class for all toolkit errors."""

    exit_code = EXIT_NUMERICAL


class ConfigError(SchrodingerisationError, ValueError):
    """Invalid experiment configuration or command-line input."""

    exit_code = EXIT_CONFIG


class GridError(SchrodingerisationError, ValueError):
    """Malformed grid, mesh or matrix shape, or a size cap exceeded."""

    exit_code = EXIT_CONFIG


class NumericalError(SchrodingerisationError):
    """A numerical operation failed."""


class SingularSolveError(NumericalError):
    """A backward Euler linear solve hit a singular matrix."""

    def __init__(self, step: int, mode: Optional[int] = None, detail: str = ""):
        self.step = step
        self.mode = mode
        where = f"step {step}" if mode is None else f"step {step}, mode {mode}"
        message = f"singular linear solve at {where}"
        if detail:
            message += f": {detail}"
        super().__init__(message)


class EigenSolveError(NumericalError):
    """An eigenvalue computation did not converge."""


class TotalInternalReflectionError(NumericalError):
    """The refraction radicand is negative."""


class InterfacePositivityError(NumericalError):
    """An immersed-interface denominator D_k or D_{k+1} is not positive."""

    def __init__(self, t: float, k: int, value: float):
        self.t = t
        self.k = k
        self.value = value
        super().__init__(f"non-positive interface denominator {value:.6g} at t={t:.6g}, k={k}")


class ComplexityRegimeError(NumericalError):
    """Inputs fall outside the regime where the query-complexity bound is defined."""

    exit_code = EXIT_CONFIG


class PipelineError(SchrodingerisationError):
    """Failure inside the Schrödingerisation pipeline, tagged with the stage that raised."""

    def __init__(self, stage: str, cause: Exception):
        self.stage = stage
        self.cause = cause
        self.exit_code = getattr(cause, "exit_code", EXIT_NUMERICAL)
        super().__init__(f"[{stage}] {cause}")


def exit_code_for(error: BaseException) -> int:
    """
    Map an exception to the CLI exit code.

    Args:
        error: Exception raised by a run

    Returns:
        1 for configuration problems, 2 for numerical failures, 3 for I/O
    """
    if isinstance(error, SchrodingerisationError):
        return error.exit_code
    if isinstance(error, OSError):
        return EXIT_IO
    if isinstance(error, ValueError):
        return EXIT_CONFIG
    return EXIT_NUMERICAL
