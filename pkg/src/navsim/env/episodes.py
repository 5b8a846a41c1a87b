"""
Episode definitions: obstacles, episode specs, training samplers and scenario files.
"""

import json
import math
from dataclasses import dataclass, replace
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

import numpy as np

from ..config import config
from ..errors import DegeneratePath, ScenarioError
from ..utils.logger import get_env_logger

logger = get_env_logger()

Vec = Tuple[float, float]

DEFAULT_MAX_STEPS = 160
DEFAULT_SUCCESS_RADIUS = 0.5

# Destination range for sampled episodes (L)
DEST_RANGE = (8.0, 18.0)

# Static sampler
ON_SEGMENT_PROBABILITY = 0.6
SEGMENT_FRACTION = (0.25, 0.75)
STATIC_RADIUS = (0.25, 1.0)

# Dynamic sampler
DYNAMIC_RANGE = (5.0, 20.0)
DYNAMIC_SPEED = (0.0, 1.67)
DYNAMIC_RADIUS = (0.0, 1.0)

# Half-width of the uniform jitter applied to obstacles in scenario variants
VARIANT_JITTER = 0.5


class Mode(str, Enum):
    STATIC = "static"
    DYNAMIC = "dynamic"

    @property
    def obs_dim(self) -> int:
        return 7 if self is Mode.STATIC else 9


@dataclass(frozen=True)
class Obstacle:
    """Circular obstacle moving at constant velocity."""

    id: int
    x: float
    y: float
    vx: float = 0.0
    vy: float = 0.0
    radius: float = 0.0

    def __post_init__(self):
        if self.radius < 0:
            raise ScenarioError(f"obstacle {self.id}: negative radius {self.radius}")

    @property
    def velocity(self) -> Vec:
        return (self.vx, self.vy)

    def position_at(self, t: float) -> Vec:
        """Position after non-dim time t."""
        return (self.x + self.vx * t, self.y + self.vy * t)

    @property
    def is_static(self) -> bool:
        return self.vx == 0.0 and self.vy == 0.0


@dataclass(frozen=True)
class EpisodeSpec:
    """Everything that defines one episode besides the actions taken.

    waypoints holds at least two points; legs are consecutive pairs and the
    ship always starts at the origin heading along +X.
    """

    mode: Mode
    waypoints: Tuple[Vec, ...]
    obstacles: Tuple[Obstacle, ...] = ()
    max_steps: int = DEFAULT_MAX_STEPS
    success_radius: float = DEFAULT_SUCCESS_RADIUS
    seed: Optional[int] = None
    name: str = ""

    def __post_init__(self):
        if len(self.waypoints) < 2:
            raise ScenarioError("an episode needs at least two waypoints")
        for a, b in zip(self.waypoints, self.waypoints[1:]):
            if a[0] == b[0] and a[1] == b[1]:
                raise DegeneratePath(f"consecutive waypoints coincide at {a}")
        if self.max_steps < 0:
            raise ScenarioError(f"max_steps must be non-negative, got {self.max_steps}")
        if not self.success_radius > 0:
            raise ScenarioError(f"success_radius must be positive, got {self.success_radius}")
        ids = [o.id for o in self.obstacles]
        if len(set(ids)) != len(ids):
            raise ScenarioError(f"duplicate obstacle ids: {ids}")
        if self.mode is Mode.STATIC and not all(o.is_static for o in self.obstacles):
            raise ScenarioError("static episodes cannot contain moving obstacles")

    @property
    def start_wp(self) -> Vec:
        return self.waypoints[0]

    @property
    def dest_wp(self) -> Vec:
        return self.waypoints[-1]

    @property
    def n_legs(self) -> int:
        return len(self.waypoints) - 1

    def leg(self, index: int) -> Tuple[Vec, Vec]:
        return self.waypoints[index], self.waypoints[index + 1]

    def with_overrides(self, **changes) -> "EpisodeSpec":
        return replace(self, **changes)

    def mirrored(self) -> "EpisodeSpec":
        """Reflection about the global X axis (the initial track line)."""
        return replace(
            self,
            waypoints=tuple((x, -y) for x, y in self.waypoints),
            obstacles=tuple(replace(o, y=-o.y, vy=-o.vy) for o in self.obstacles),
        )


def _destination(rng: np.random.Generator) -> Vec:
    dist = rng.uniform(*DEST_RANGE)
    angle = rng.uniform(-math.pi, math.pi)
    return (dist * math.cos(angle), dist * math.sin(angle))


def sample_static_episode(rng: np.random.Generator, *, obstacles: bool = True,
                          max_steps: int = DEFAULT_MAX_STEPS, seed: Optional[int] = None) -> EpisodeSpec:
    """
    Draw a static-obstacle training episode.

    With probability 0.6 the obstacle sits on the start-dest segment at a
    uniform fraction in [0.25, 0.75]; otherwise it is uniform inside a circle
    around the start whose radius is that fraction of the leg length.

    Args:
        rng: Seeded numpy generator
        obstacles: Place an obstacle (False gives a pure path-following episode)
        max_steps: Agent step limit
        seed: Recorded in the spec for bookkeeping
    """
    dest = _destination(rng)
    placed: Tuple[Obstacle, ...] = ()
    if obstacles:
        dist = math.hypot(*dest)
        frac = rng.uniform(*SEGMENT_FRACTION)
        if rng.uniform() < ON_SEGMENT_PROBABILITY:
            ox, oy = dest[0] * frac, dest[1] * frac
        else:
            rho = frac * dist * math.sqrt(rng.uniform())
            phi = rng.uniform(-math.pi, math.pi)
            ox, oy = rho * math.cos(phi), rho * math.sin(phi)
        placed = (Obstacle(0, float(ox), float(oy), radius=float(rng.uniform(*STATIC_RADIUS))),)
    return EpisodeSpec(Mode.STATIC, ((0.0, 0.0), (float(dest[0]), float(dest[1]))), placed,
                       max_steps=max_steps, seed=seed)


def sample_dynamic_episode(rng: np.random.Generator, *, n_obstacles: Optional[int] = None,
                           max_steps: int = DEFAULT_MAX_STEPS, seed: Optional[int] = None) -> EpisodeSpec:
    """Draw a dynamic-obstacle training episode with moving obstacles around the origin."""
    if n_obstacles is None:
        n_obstacles = config.sim.dynamic_obstacles
    dest = _destination(rng)
    placed: List[Obstacle] = []
    for i in range(n_obstacles):
        rng_range = rng.uniform(*DYNAMIC_RANGE)
        bearing = rng.uniform(-math.pi, math.pi)
        speed = rng.uniform(*DYNAMIC_SPEED)
        course = rng.uniform(-math.pi, math.pi)
        radius = rng.uniform(*DYNAMIC_RADIUS)
        placed.append(Obstacle(
            i,
            float(rng_range * math.cos(bearing)), float(rng_range * math.sin(bearing)),
            float(speed * math.cos(course)), float(speed * math.sin(course)),
            float(radius),
        ))
    return EpisodeSpec(Mode.DYNAMIC, ((0.0, 0.0), (float(dest[0]), float(dest[1]))), tuple(placed),
                       max_steps=max_steps, seed=seed)


def scenario_variants(spec: EpisodeSpec, count: int, seed: int) -> List[EpisodeSpec]:
    """
    Randomized copies of a scenario for evaluation.

    Variant 0 is the scenario itself; the others shift every obstacle by a
    uniform offset in [-0.5, 0.5] L per axis.
    """
    if count < 1:
        return []
    variants = [spec]
    for k in range(1, count):
        rng = np.random.default_rng([seed, k])
        moved = tuple(
            replace(o, x=o.x + float(rng.uniform(-VARIANT_JITTER, VARIANT_JITTER)),
                    y=o.y + float(rng.uniform(-VARIANT_JITTER, VARIANT_JITTER)))
            for o in spec.obstacles
        )
        variants.append(replace(spec, obstacles=moved, name=f"{spec.name}#{k}" if spec.name else f"#{k}"))
    return variants


_SCENARIO_KEYS = {"name", "mode", "waypoints", "obstacles", "max_steps", "success_radius", "seed"}
_OBSTACLE_KEYS = {"id", "x", "y", "vx", "vy", "radius"}


def spec_to_dict(spec: EpisodeSpec) -> Dict[str, Any]:
    return {
        "name": spec.name,
        "mode": spec.mode.value,
        "waypoints": [[x, y] for x, y in spec.waypoints],
        "obstacles": [
            {"id": o.id, "x": o.x, "y": o.y, "vx": o.vx, "vy": o.vy, "radius": o.radius}
            for o in spec.obstacles
        ],
        "max_steps": spec.max_steps,
        "success_radius": spec.success_radius,
        "seed": spec.seed,
    }


def spec_from_dict(doc: Dict[str, Any]) -> EpisodeSpec:
    """
    Build an EpisodeSpec from a decoded scenario document.

    Raises:
        ScenarioError: on unknown keys, missing fields or bad values
    """
    if not isinstance(doc, dict):
        raise ScenarioError("scenario document must be a JSON object")
    unknown = sorted(set(doc) - _SCENARIO_KEYS)
    if unknown:
        raise ScenarioError(f"unknown scenario keys: {', '.join(unknown)}")
    try:
        mode = Mode(doc["mode"])
        waypoints = tuple((float(p[0]), float(p[1])) for p in doc["waypoints"])
        obstacles = []
        for o in doc.get("obstacles", []):
            extra = sorted(set(o) - _OBSTACLE_KEYS)
            if extra:
                raise ScenarioError(f"unknown obstacle keys: {', '.join(extra)}")
            obstacles.append(Obstacle(int(o["id"]), float(o["x"]), float(o["y"]),
                                      float(o.get("vx", 0.0)), float(o.get("vy", 0.0)),
                                      float(o.get("radius", 0.0))))
        seed = doc.get("seed")
        return EpisodeSpec(
            mode=mode,
            waypoints=waypoints,
            obstacles=tuple(obstacles),
            max_steps=int(doc.get("max_steps", DEFAULT_MAX_STEPS)),
            success_radius=float(doc.get("success_radius", DEFAULT_SUCCESS_RADIUS)),
            seed=None if seed is None else int(seed),
            name=str(doc.get("name", "")),
        )
    except KeyError as e:
        raise ScenarioError(f"scenario is missing field {e}") from e
    except (TypeError, ValueError, IndexError) as e:
        raise ScenarioError(f"invalid scenario value: {e}") from e


def load_scenario_file(path: Union[str, Path]) -> EpisodeSpec:
    path = Path(path)
    try:
        with open(path, encoding="utf-8") as f:
            doc = json.load(f)
    except FileNotFoundError as e:
        raise ScenarioError(f"scenario file not found: {path}") from e
    except json.JSONDecodeError as e:
        raise ScenarioError(f"invalid JSON in {path}: {e}") from e
    spec = spec_from_dict(doc)
    if spec.n_legs == 1:
        length = math.hypot(spec.dest_wp[0] - spec.start_wp[0], spec.dest_wp[1] - spec.start_wp[1])
        if not DEST_RANGE[0] <= length <= DEST_RANGE[1]:
            logger.warning(f"Scenario {path.name}: leg length {length:.2f} L outside the training range")
    return spec


def save_scenario_file(spec: EpisodeSpec, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.write_text(json.dumps(spec_to_dict(spec), indent=2) + "\n", encoding="utf-8")
    return path
