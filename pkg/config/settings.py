#!/usr/bin/env python3
"""
Experiment configuration.

Precedence: built-in defaults < config file (`key = value` lines, `#` comments)
< command-line flags.
"""

import os
from dataclasses import dataclass, fields, replace
from typing import Any, Dict, Optional, Tuple

from dotenv import dotenv_values

from config.constants import (
    DEFAULT_ALPHA_NEG,
    DEFAULT_L0,
    DEFAULT_OUT,
    DEFAULT_R,
    DEFAULT_SAFETY,
    DEFAULT_SEED,
    EXPERIMENT_DEFAULTS,
    EXPERIMENTS,
    RECOVERY_ROUTES,
    SCHEMES,
    SCHRO_NUM_THREADS_ENV,
    SOLVERS,
    SPEED_BOUNDS,
)
from utils.errors import ConfigError


@dataclass(frozen=True)
class ExperimentConfig:
    """One experiment run. `m` is the velocity cell count (optics only)."""

    experiment: str
    nx: int
    n_p: int
    nt: int
    T: float
    domain: Tuple[float, float]
    m: int = 0
    R: float = DEFAULT_R
    l0: float = DEFAULT_L0
    alpha_neg: float = DEFAULT_ALPHA_NEG
    safety: float = DEFAULT_SAFETY
    scheme: str = "backward_euler"
    recovery: str = "point"
    solver: str = "schrodinger"
    speed_bound: str = "gershgorin"
    compare_oracle: bool = False
    out: str = DEFAULT_OUT
    seed: int = DEFAULT_SEED
    xi_domain: Tuple[float, float] = (0.0, 0.0)
    c_minus: float = 0.0
    c_plus: float = 0.0
    continuity: str = "flux"
    beta_minus: float = 0.0
    beta_plus: float = 0.0

    def with_overrides(self, **changes) -> "ExperimentConfig":
        config = replace(self, **changes)
        validate_config(config)
        return config


# Config-file keys that differ from field names
_KEY_ALIASES = {
    "np": "n_p",
    "alpha-neg": "alpha_neg",
    "compare-oracle": "compare_oracle",
    "speed-bound": "speed_bound",
    "xi-domain": "xi_domain",
}

_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


def _field_types() -> Dict[str, Any]:
    defaults = {f.name: f.default for f in fields(ExperimentConfig)}
    types = {}
    for name, default in defaults.items():
        if name in ("nx", "n_p", "nt", "m", "seed"):
            types[name] = int
        elif name in ("domain", "xi_domain"):
            types[name] = tuple
        elif name == "compare_oracle":
            types[name] = bool
        elif isinstance(default, float):
            types[name] = float
        else:
            types[name] = str
    types["T"] = float
    return types


def _convert(name: str, raw: Any, kind) -> Any:
    if not isinstance(raw, str):
        return raw
    text = raw.strip()
    try:
        if kind is int:
            return int(text)
        if kind is float:
            return float(text)
        if kind is bool:
            lowered = text.lower()
            if lowered in _TRUE:
                return True
            if lowered in _FALSE:
                return False
            raise ValueError(text)
        if kind is tuple:
            lo, hi = (float(part) for part in text.split(","))
            return (lo, hi)
    except ValueError as e:
        raise ConfigError(f"invalid value for '{name}': {raw!r}") from e
    return text


def read_config_file(path: str) -> Dict[str, Any]:
    """
    Parse a `key = value` config file.

    Args:
        path: Path to the file

    Returns:
        Mapping of ExperimentConfig field names to converted values

    Raises:
        OSError: If the file cannot be read
        ConfigError: For unknown keys or malformed values
    """
    if not os.path.isfile(path):
        raise FileNotFoundError(f"config file not found: {path}")
    types = _field_types()
    values = {}
    for key, raw in dotenv_values(path).items():
        name = _KEY_ALIASES.get(key.strip(), key.strip())
        if name not in types:
            raise ConfigError(f"unknown config key '{key}' in {path}")
        if raw is None:
            raise ConfigError(f"config key '{key}' has no value in {path}")
        values[name] = _convert(name, raw, types[name])
    return values


def validate_config(config: ExperimentConfig):
    """Raise ConfigError if the configuration is not runnable."""
    if config.experiment not in EXPERIMENTS:
        raise ConfigError(f"unknown experiment '{config.experiment}'")
    for name in ("nx", "n_p", "nt"):
        if getattr(config, name) < 1:
            raise ConfigError(f"{name} must be positive, got {getattr(config, name)}")
    if config.n_p % 2:
        raise ConfigError(f"np must be even, got {config.n_p}")
    if config.T < 0:
        raise ConfigError(f"T must be non-negative, got {config.T}")
    if config.R <= 0:
        raise ConfigError(f"R must be positive, got {config.R}")
    if config.l0 > 0:
        raise ConfigError(f"l0 must be <= 0, got {config.l0}")
    if config.alpha_neg < 1:
        raise ConfigError(f"alpha_neg must be >= 1, got {config.alpha_neg}")
    if not 0 < config.safety <= 1:
        raise ConfigError(f"safety must lie in (0, 1], got {config.safety}")
    if config.scheme not in SCHEMES:
        raise ConfigError(f"unknown scheme '{config.scheme}'")
    if config.recovery not in RECOVERY_ROUTES:
        raise ConfigError(f"unknown recovery route '{config.recovery}'")
    if config.solver not in SOLVERS:
        raise ConfigError(f"unknown solver '{config.solver}'")
    if config.speed_bound not in SPEED_BOUNDS:
        raise ConfigError(f"unknown speed bound '{config.speed_bound}'")
    if config.domain[0] >= config.domain[1]:
        raise ConfigError(f"domain must be increasing, got {config.domain}")
    if config.experiment == "optics-hp":
        if config.m < 2 or config.m % 2:
            raise ConfigError(f"m must be even and positive for optics-hp, got {config.m}")
    if config.solver == "direct" and config.scheme == "exact_block_exponential":
        raise ConfigError("exact_block_exponential needs the schrodinger solver")


def load_config(
    experiment: str,
    config_path: Optional[str] = None,
    overrides: Optional[Dict[str, Any]] = None,
) -> ExperimentConfig:
    """
    Build the configuration for one experiment.

    Args:
        experiment: Experiment name
        config_path: Optional `key = value` config file
        overrides: Values from command-line flags (None entries are ignored)

    Returns:
        Validated ExperimentConfig
    """
    if experiment not in EXPERIMENTS:
        raise ConfigError(f"unknown experiment '{experiment}'; choose from {', '.join(EXPERIMENTS)}")

    values: Dict[str, Any] = {"experiment": experiment}
    values.update(EXPERIMENT_DEFAULTS[experiment])

    explicit: Dict[str, Any] = {}
    if config_path:
        explicit.update(read_config_file(config_path))
    explicit.update({k: v for k, v in (overrides or {}).items() if v is not None})
    explicit.pop("experiment", None)
    values.update(explicit)

    # The Schrödingerised optics run is unstable under forward Euler
    if experiment == "optics-hp" and values.get("solver") == "schrodinger" and "scheme" not in explicit:
        values["scheme"] = "backward_euler"

    try:
        config = ExperimentConfig(**values)
    except TypeError as e:
        raise ConfigError(str(e)) from e
    validate_config(config)
    return config


def num_threads() -> int:
    """Worker count for mode-parallel evolution (SCHRO_NUM_THREADS, default all cores)."""
    raw = os.getenv(SCHRO_NUM_THREADS_ENV)
    if raw:
        try:
            count = int(raw)
        except ValueError:
            raise ConfigError(f"{SCHRO_NUM_THREADS_ENV} must be an integer, got {raw!r}")
        if count < 1:
            raise ConfigError(f"{SCHRO_NUM_THREADS_ENV} must be positive, got {count}")
        return count
    return os.cpu_count() or 1
