"""Training hyperparameters, presets and YAML loading."""

from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path
from typing import Any, Dict, Tuple, Union

import yaml

from ..env.episodes import Mode
from ..errors import ConfigError


@dataclass(frozen=True)
class TrainConfig:
    """DQN hyperparameters; the defaults are the static-obstacle preset."""

    mode: Mode = Mode.STATIC
    lr0: float = 7.5e-4
    """Initial learning rate"""
    decay_steps: int = 50_000
    decay_rate: float = 0.4
    staircase: bool = False
    """Decay the learning rate in whole steps instead of continuously"""
    gamma: float = 0.97
    batch_size: int = 128
    episodes: int = 9000
    update_every: int = 10
    """Environment steps between gradient updates"""
    target_update_every: int = 1
    tau: float = 0.01
    buffer_capacity: int = 100_000
    hidden: Tuple[int, ...] = (128, 128)
    seed: int = 0
    max_steps: int = 160
    obstacles: bool = True
    """Place obstacles in sampled episodes (off for the path-following smoke run)"""
    checkpoint_every: int = 500
    log_wall_time: bool = False
    """Add wall-clock seconds to log records (breaks byte-identical logs)"""

    def __post_init__(self):
        positive = ("lr0", "decay_steps", "decay_rate", "batch_size", "episodes", "update_every",
                    "target_update_every", "buffer_capacity", "checkpoint_every")
        for name in positive:
            if not getattr(self, name) > 0:
                raise ConfigError(f"{name} must be positive, got {getattr(self, name)}")
        if not 0.0 < self.gamma < 1.0:
            raise ConfigError(f"gamma must be in (0, 1), got {self.gamma}")
        if not 0.0 < self.tau <= 1.0:
            raise ConfigError(f"tau must be in (0, 1], got {self.tau}")
        if self.max_steps < 1:
            raise ConfigError(f"max_steps must be at least 1, got {self.max_steps}")
        if not self.hidden or any(h <= 0 for h in self.hidden):
            raise ConfigError(f"hidden widths must be positive, got {self.hidden}")
        if self.seed < 0:
            raise ConfigError(f"seed must be non-negative, got {self.seed}")

    @classmethod
    def static(cls, **overrides) -> "TrainConfig":
        return cls(**overrides)

    @classmethod
    def dynamic(cls, **overrides) -> "TrainConfig":
        base = dict(mode=Mode.DYNAMIC, decay_rate=0.5, episodes=8000, update_every=5)
        base.update(overrides)
        return cls(**base)

    @property
    def obs_dim(self) -> int:
        return self.mode.obs_dim

    @property
    def widths(self) -> Tuple[int, ...]:
        return (self.obs_dim, *self.hidden, 5)

    def with_overrides(self, **changes) -> "TrainConfig":
        return replace(self, **{k: v for k, v in changes.items() if v is not None})

    def to_dict(self) -> Dict[str, Any]:
        d = asdict(self)
        d["mode"] = self.mode.value
        d["hidden"] = list(self.hidden)
        return d

    @classmethod
    def from_dict(cls, doc: Dict[str, Any]) -> "TrainConfig":
        """
        Build a config from a mapping; the mode picks the preset that the other keys override.

        Raises:
            ConfigError: on unknown keys or invalid values
        """
        if not isinstance(doc, dict):
            raise ConfigError("training config must be a mapping")
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(doc) - known)
        if unknown:
            raise ConfigError(f"unknown training config keys: {', '.join(unknown)}")
        values = dict(doc)
        try:
            mode = Mode(values.pop("mode", Mode.STATIC.value))
            if "hidden" in values:
                values["hidden"] = tuple(int(h) for h in values["hidden"])
        except (TypeError, ValueError) as e:
            raise ConfigError(f"invalid training config: {e}") from e
        preset = cls.dynamic if mode is Mode.DYNAMIC else cls.static
        try:
            return preset(**values)
        except TypeError as e:
            raise ConfigError(f"invalid training config: {e}") from e

    @classmethod
    def from_yaml(cls, path: Union[str, Path]) -> "TrainConfig":
        path = Path(path)
        try:
            with open(path, encoding="utf-8") as f:
                doc = yaml.safe_load(f)
        except FileNotFoundError as e:
            raise ConfigError(f"training config not found: {path}") from e
        except yaml.YAMLError as e:
            raise ConfigError(f"invalid YAML in {path}: {e}") from e
        return cls.from_dict(doc or {})
