"""Centralized configuration for navsim.

This module provides a single source of truth for simulation constants,
runtime settings and file locations, supporting both environment variables
and default values.
"""
from dataclasses import dataclass, field
from pathlib import Path
import os
from typing import Optional


def _optional_int(name: str) -> Optional[int]:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return None
    return int(raw)


@dataclass
class SimConfig:
    """Time discretization and environment constants."""

    dt: float = field(
        default_factory=lambda: float(os.getenv("NAVSIM_DT", "0.1"))
    )
    """RK4 substep in non-dimensional time units L/U (default: 0.1)"""

    substeps: int = field(
        default_factory=lambda: int(os.getenv("NAVSIM_SUBSTEPS", "3"))
    )
    """RK4 substeps per agent action (default: 3, control period 0.3)"""

    sentinel_distance: float = 25.0
    """Obstacle distance reported when an episode has no obstacle (units of L)"""

    ship_half_length: float = 0.5
    """Added to the obstacle radius to form the collision envelope (units of L)"""

    dynamic_obstacles: int = field(
        default_factory=lambda: int(os.getenv("NAVSIM_DYNAMIC_OBSTACLES", "4"))
    )
    """Obstacles drawn per dynamic episode (default: 4)"""

    n_max: float = 200.0
    """Upper end of the propeller-rate search for the self-propulsion point"""

    @property
    def control_period(self) -> float:
        """Non-dimensional time covered by one agent step"""
        return self.dt * self.substeps


@dataclass
class RuntimeConfig:
    """Process-level settings read from the environment."""

    seed: Optional[int] = field(default_factory=lambda: _optional_int("NAVSIM_SEED"))
    """Default seed for seeded commands; a --seed flag wins"""

    eval_workers: int = field(
        default_factory=lambda: int(os.getenv("NAVSIM_EVAL_WORKERS", "4"))
    )
    """Threads used to run evaluation episodes (default: 4)"""

    log_level: str = field(
        default_factory=lambda: os.getenv("LOG_LEVEL", "INFO")
    )
    """Logging level (DEBUG, INFO, WARNING, ERROR)"""


@dataclass
class PathConfig:
    """Configuration for file paths."""

    # Compute root directory (3 levels up from this file)
    root_dir: Path = field(default_factory=lambda: Path(__file__).parent.parent.parent)
    """Project root directory"""

    @property
    def data_dir(self) -> Path:
        """Directory for shipped data files"""
        return self.root_dir / "data"

    @property
    def config_dir(self) -> Path:
        """Directory for training configuration files"""
        return self.root_dir / "config"

    @property
    def logs_dir(self) -> Path:
        """Directory for log files (NAVSIM_LOG_DIR overrides)"""
        override = os.getenv("NAVSIM_LOG_DIR")
        return Path(override) if override else self.root_dir / "logs"

    @property
    def params_file(self) -> Path:
        """Default hydrodynamic parameter set (data/params/kcs_like.json)"""
        return self.data_dir / "params" / "kcs_like.json"


@dataclass
class Config:
    """Main configuration container."""

    sim: SimConfig = field(default_factory=SimConfig)
    """Simulation configuration"""

    runtime: RuntimeConfig = field(default_factory=RuntimeConfig)
    """Runtime configuration"""

    paths: PathConfig = field(default_factory=PathConfig)
    """Path configuration"""

    @classmethod
    def from_env(cls) -> "Config":
        """Create configuration from environment variables."""
        return cls()


# Global config instance - can be imported and used anywhere
config = Config()


def get_params_file() -> Path:
    """Get the default parameter file path."""
    return config.paths.params_file


def resolve_seed(flag: Optional[int], fallback: Optional[int] = None) -> int:
    """Pick the seed for a run: flag, then NAVSIM_SEED, then the fallback, then 0."""
    if flag is not None:
        return flag
    env_seed = _optional_int("NAVSIM_SEED")
    if env_seed is not None:
        return env_seed
    return fallback if fallback is not None else 0
