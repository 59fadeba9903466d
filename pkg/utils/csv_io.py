#!/usr/bin/env python3
"""
CSV persistence for results, error summaries and convergence tables.

Every float is written with 17 significant digits so a file read back with
read_table reproduces the written values exactly.
"""

import os

import numpy as np
import pandas as pd

from config.constants import CSV_FLOAT_FORMAT
from oracles.norms import ErrorReport

PROFILE_COLUMNS = ["x", "u_num", "u_exact", "abs_err"]
PHASE_COLUMNS = ["x", "xi", "f_num", "f_exact"]
ERROR_COLUMNS = ["norm", "value"]


def _ensure_parent(path: str):
    parent = os.path.dirname(os.path.abspath(path))
    os.makedirs(parent, exist_ok=True)


def write_table(frame: pd.DataFrame, path: str) -> str:
    """Write a DataFrame without its index; parent directories are created."""
    _ensure_parent(path)
    frame.to_csv(path, index=False, float_format=CSV_FLOAT_FORMAT)
    return path


def read_table(path: str) -> pd.DataFrame:
    return pd.read_csv(path, float_precision="round_trip")


def profile_frame(x, u_num, u_exact) -> pd.DataFrame:
    """x,u_num,u_exact,abs_err for a 1-D solution (real parts)."""
    u_num = np.real(np.asarray(u_num))
    u_exact = np.real(np.asarray(u_exact))
    return pd.DataFrame({
        "x": np.asarray(x, dtype=float),
        "u_num": u_num,
        "u_exact": u_exact,
        "abs_err": np.abs(u_num - u_exact),
    }, columns=PROFILE_COLUMNS)


def phase_frame(x_centers, xi_centers, f_num, f_exact) -> pd.DataFrame:
    """x,xi,f_num,f_exact, row-major over (i, j)."""
    X, XI = np.meshgrid(x_centers, xi_centers, indexing="ij")
    return pd.DataFrame({
        "x": X.reshape(-1),
        "xi": XI.reshape(-1),
        "f_num": np.real(np.asarray(f_num)).reshape(-1),
        "f_exact": np.real(np.asarray(f_exact)).reshape(-1),
    }, columns=PHASE_COLUMNS)


def error_frame(report: ErrorReport) -> pd.DataFrame:
    return pd.DataFrame(report.as_rows(), columns=ERROR_COLUMNS)

