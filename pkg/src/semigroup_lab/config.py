"""
Configuration management for Semigroup Lab.

YAML file or built-in defaults, with SEMILAB_* environment overrides and
${VAR} expansion.
"""

import copy
import os
from pathlib import Path
from typing import Any

from dotenv import dotenv_values
import yaml

from . import constants

ENV_PREFIX = "SEMILAB_"

# Lazy one-time .env loading flag
_ENV_LOADED = False


def _load_env_once() -> None:
    global _ENV_LOADED
    if _ENV_LOADED:
        return
    # Precedence: OS environment, then project .env, then workspace .env.
    project_root = Path(__file__).parent.parent.parent
    workspace_env = project_root.parent / ".env"
    project_env = project_root / ".env"

    workspace_vals = dotenv_values(workspace_env) if workspace_env.exists() else {}
    project_vals = dotenv_values(project_env) if project_env.exists() else {}

    merged = {}
    merged.update({k: v for k, v in workspace_vals.items() if v is not None})
    merged.update({k: v for k, v in project_vals.items() if v is not None})

    for k, v in merged.items():
        if k and v is not None and k not in os.environ:
            os.environ[k] = str(v)
    _ENV_LOADED = True


_DEFAULTS: dict[str, Any] = {
    "spectra": {"n_max": constants.DEFAULT_NMAX},
    "truncation": {
        "divisor": constants.TAIL_DIVISOR,
        "divergence_ratio": constants.DIVERGENCE_RATIO,
    },
    "calculus": {
        "grid": {
            "xi_min": constants.GRID_XI_MIN,
            "xi_max": constants.GRID_XI_MAX,
            "xi_points": constants.GRID_XI_POINTS,
            "eta_points": constants.GRID_ETA_POINTS,
            "anchor_modes": constants.GRID_ANCHOR_MODES,
        },
        "grid_tolerance": constants.WEISS_GRID_TOL,
    },
    "quadrature": {
        "rtol": constants.QUAD_RTOL,
        "atol": constants.QUAD_ATOL,
        "max_subdivisions": constants.QUAD_MAX_SUBDIVISIONS,
        "horizon": constants.QUAD_HORIZON,
    },
    "rates": {
        "window_decades": constants.FIT_WINDOW_DECADES,
        "min_points": constants.FIT_MIN_POINTS,
        "equivalence": {
            "points_per_decade": constants.EQUIVALENCE_POINTS_PER_DECADE,
            "growth_threshold": constants.EQUIVALENCE_GROWTH_THRESHOLD,
        },
    },
    "carleson": {
        "levels": constants.CARLESON_LEVELS,
        "dense_limit": constants.CARLESON_DENSE_LIMIT,
    },
    "random": {"seed": constants.DEFAULT_SEED},
    "output": {"format": "json", "directory": None},
}


class Config:
    """Configuration manager with defaults and environment overrides."""

    config_path: str | None = None

    def __init__(self, config_data: dict):
        """Initialize configuration from dictionary."""
        _load_env_once()
        self._data = config_data or {}
        # values set from the command line; checked before the environment
        self._overrides: dict[str, Any] = {}
        self.config_path = None

    @classmethod
    def from_file(cls, config_path: str) -> "Config":
        """Load configuration from YAML file."""
        _load_env_once()
        path = Path(config_path)

        if not path.exists():
            # Try relative to project root
            project_root = Path(__file__).parent.parent.parent
            path = project_root / config_path

            if not path.exists():
                raise FileNotFoundError(f"Configuration file not found: {config_path}")

        with open(path) as f:
            data = yaml.safe_load(f)

        instance = cls(data)
        instance.config_path = str(path)
        return instance

    @classmethod
    def from_defaults(cls) -> "Config":
        """Create configuration with default values."""
        _load_env_once()
        instance = cls(copy.deepcopy(_DEFAULTS))
        instance.config_path = "defaults"
        return instance

    def get(self, key: str, default: Any = None) -> Any:
        """Get configuration value using dot notation."""
        if key in self._overrides:
            return self._overrides[key]
        keys = key.split(".")
        value = self._data

        for k in keys:
            if isinstance(value, dict) and k in value:
                value = value[k]
            else:
                return default

        env_key = f"{ENV_PREFIX}{key.upper().replace('.', '_')}"
        env_value = os.getenv(env_key)
        if env_value is not None:
            if isinstance(value, bool):
                return env_value.lower() in ("true", "1", "yes", "on")
            elif isinstance(value, int):
                try:
                    return int(env_value)
                except ValueError:
                    pass
            elif isinstance(value, float):
                try:
                    return float(env_value)
                except ValueError:
                    pass
            return env_value

        if isinstance(value, str) and value.startswith("${") and value.endswith("}"):
            expanded_value = os.getenv(value[2:-1])
            if expanded_value is not None:
                return expanded_value

        return value

    def set(self, key: str, value: Any) -> None:
        """Set a value using dot notation.

        Set values win over the file and over SEMILAB_* variables.
        """
        self._overrides[key] = value
        keys = key.split(".")
        node = self._data
        for k in keys[:-1]:
            node = node.setdefault(k, {})
        node[keys[-1]] = value

    @property
    def n_max(self) -> int:
        """Default truncation index."""
        return int(self.get("spectra.n_max", constants.DEFAULT_NMAX))

    @property
    def tail_divisor(self) -> int:
        """Divisor giving the second truncation level."""
        return int(self.get("truncation.divisor", constants.TAIL_DIVISOR))

    @property
    def divergence_ratio(self) -> float:
        """Growth between truncation levels above which a sup is divergent."""
        return float(
            self.get("truncation.divergence_ratio", constants.DIVERGENCE_RATIO)
        )

    @property
    def grid_settings(self) -> dict:
        """Half-plane grid parameters for the Weiss oracle."""
        grid = self.get("calculus.grid", {}) or {}
        return {
            "xi_min": float(grid.get("xi_min", constants.GRID_XI_MIN)),
            "xi_max": float(grid.get("xi_max", constants.GRID_XI_MAX)),
            "xi_points": int(grid.get("xi_points", constants.GRID_XI_POINTS)),
            "eta_points": int(grid.get("eta_points", constants.GRID_ETA_POINTS)),
            "anchor_modes": int(
                grid.get("anchor_modes", constants.GRID_ANCHOR_MODES)
            ),
        }

    @property
    def grid_tolerance(self) -> float:
        return float(self.get("calculus.grid_tolerance", constants.WEISS_GRID_TOL))

    @property
    def quad_rtol(self) -> float:
        return float(self.get("quadrature.rtol", constants.QUAD_RTOL))

    @property
    def quad_atol(self) -> float:
        return float(self.get("quadrature.atol", constants.QUAD_ATOL))

    @property
    def quad_max_subdivisions(self) -> int:
        return int(
            self.get("quadrature.max_subdivisions", constants.QUAD_MAX_SUBDIVISIONS)
        )

    @property
    def quad_horizon(self) -> float:
        return float(self.get("quadrature.horizon", constants.QUAD_HORIZON))

    @property
    def fit_window_decades(self) -> float:
        return float(self.get("rates.window_decades", constants.FIT_WINDOW_DECADES))

    @property
    def fit_min_points(self) -> int:
        return int(self.get("rates.min_points", constants.FIT_MIN_POINTS))

    @property
    def equivalence_points_per_decade(self) -> int:
        return int(
            self.get(
                "rates.equivalence.points_per_decade",
                constants.EQUIVALENCE_POINTS_PER_DECADE,
            )
        )

    @property
    def equivalence_growth_threshold(self) -> float:
        return float(
            self.get(
                "rates.equivalence.growth_threshold",
                constants.EQUIVALENCE_GROWTH_THRESHOLD,
            )
        )

    @property
    def carleson_levels(self) -> int:
        return int(self.get("carleson.levels", constants.CARLESON_LEVELS))

    @property
    def carleson_dense_limit(self) -> int:
        return int(self.get("carleson.dense_limit", constants.CARLESON_DENSE_LIMIT))

    @property
    def seed(self) -> int:
        """Seed for random test vectors."""
        return int(self.get("random.seed", constants.DEFAULT_SEED))

    @property
    def output_format(self) -> str:
        """Report format: json or csv."""
        return str(self.get("output.format", "json"))

    @property
    def output_directory(self) -> str | None:
        """Directory for report files; None prints to stdout only."""
        value = self.get("output.directory")
        if not value or (isinstance(value, str) and value.startswith("${")):
            return None
        return str(value)
