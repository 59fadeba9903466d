#!/usr/bin/env python3
"""
Application Constants - Fixed configuration values
"""

import math

# ===== Experiments =====
EXPERIMENTS = (
    "convection-inflow",
    "heat-dirichlet",
    "heat-mixed",
    "advection-interface",
    "stefan",
    "optics-hp",
)

SCHEMES = ("backward_euler", "forward_euler", "exact_block_exponential")
RECOVERY_ROUTES = ("point", "integral")
SOLVERS = ("schrodinger", "direct")
SPEED_BOUNDS = ("gershgorin", "eigen")

# ===== Default Configuration Values =====
# These can be overridden by a config file or command-line flags

# Shared warped-phase settings
DEFAULT_R = 10.0          # right end of the p-domain
DEFAULT_L0 = -1.0         # left edge of the initial near-support
DEFAULT_ALPHA_NEG = 10.0  # decay rate of the warped data for p < 0
DEFAULT_SAFETY = 1.0      # CFL safety factor for the Liouville solver
DEFAULT_OUT = "results"
DEFAULT_SEED = 0

# Per-experiment default setups. Keys mirror ExperimentConfig fields.
EXPERIMENT_DEFAULTS = {
    "convection-inflow": {
        "nx": 64, "n_p": 64, "nt": 100, "T": 1.0,
        "domain": (0.0, 10.0), "scheme": "backward_euler",
    },
    "heat-dirichlet": {
        # Nx - 1 = 64 interior unknowns
        "nx": 65, "n_p": 64, "nt": 100, "T": 1.0 / math.pi ** 2,
        "domain": (0.0, 10.0), "scheme": "backward_euler",
    },
    "heat-mixed": {
        "nx": 64, "n_p": 512, "nt": 100, "T": 1.0 / math.pi ** 2,
        "domain": (0.0, 10.0), "scheme": "backward_euler",
    },
    "advection-interface": {
        "nx": 64, "n_p": 128, "nt": 100, "T": 0.5,
        "domain": (-10.0, 10.0), "scheme": "backward_euler",
        "c_minus": 2.0, "c_plus": 1.0, "continuity": "flux",
    },
    "stefan": {
        "nx": 100, "n_p": 2048, "nt": 100, "T": 1.0,
        "domain": (0.0, 10.0), "scheme": "backward_euler",
        "beta_minus": 1.0, "beta_plus": 2.0,
    },
    "optics-hp": {
        "nx": 200, "m": 200, "n_p": 128, "nt": 1000, "T": 1.0,
        "domain": (-4.0, 4.0), "xi_domain": (-4.0, 4.0),
        "scheme": "forward_euler", "solver": "direct",
        "c_minus": 0.6, "c_plus": 0.2,
    },
}

# Stefan interface path alpha(t) = ALPHA_SLOPE * t + ALPHA_OFFSET
STEFAN_ALPHA_SLOPE = 0.5
STEFAN_ALPHA_OFFSET = 0.25

# ===== Application Limits =====
# These are hard limits that should not be changed via config

DENSE_LIMIT = 4096              # largest n handled with dense eigen/LU routines
KRON_SIZE_CAP = 1_000_000       # largest Kronecker-sum dimension
LIOUVILLE_SIZE_CAP = 250_000    # largest N*M for the assembled Liouville matrix
SCHRODINGER_STATE_CAP = 4096    # largest n for a Schrödingerised optics run
EXACT_EXPONENTIAL_LIMIT = 256   # intended ceiling for exact_block_exponential

# ===== Numerical Tolerances =====
DISSIPATIVITY_TOL = 1e-10
SUPPORT_TAIL_FRACTION = 0.05
SUPPORT_TAIL_TOL = 1e-6
STABILITY_WARN_THRESHOLD = 1.0

# ===== Output =====
CSV_FLOAT_FORMAT = "%.17g"
SCHRO_NUM_THREADS_ENV = "SCHRO_NUM_THREADS"
