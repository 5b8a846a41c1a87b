"""Built-in evaluation scenarios, one per published trajectory figure."""

from pathlib import Path
from typing import Dict, List, Union

from ..errors import ScenarioError
from .episodes import EpisodeSpec, Mode, Obstacle, load_scenario_file


def _static(name: str, waypoints, obstacles, max_steps: int = 160) -> EpisodeSpec:
    return EpisodeSpec(Mode.STATIC, tuple(waypoints),
                       tuple(Obstacle(i, x, y, radius=r) for i, (x, y, r) in enumerate(obstacles)),
                       max_steps=max_steps, seed=0, name=name)


BUILTIN_SCENARIOS: Dict[str, EpisodeSpec] = {
    # obstacle on the track, destination straight ahead
    "fig5a": _static("fig5a", [(0.0, 0.0), (15.0, 0.0)], [(7.5, 0.0, 0.75)]),
    # destination off the initial heading, obstacle on the track
    "fig5b": _static("fig5b", [(0.0, 0.0), (10.0, 10.0)], [(5.0, 5.0, 0.75)]),
    "fig5c": _static("fig5c", [(0.0, 0.0), (8.0, -12.0)], [(4.0, -6.0, 1.0)]),
    # obstacle off the track but on the ship's natural path
    "fig6a": _static("fig6a", [(0.0, 0.0), (12.0, 8.0)], [(4.0, 0.6, 0.6)]),
    "fig6b": _static("fig6b", [(0.0, 0.0), (14.0, 6.0)], [(5.0, 1.0, 1.0)]),
    # square of side 15 with one obstacle per leg
    "fig7": _static(
        "fig7",
        [(0.0, 0.0), (15.0, 0.0), (15.0, 15.0), (0.0, 15.0), (0.0, 0.0)],
        [(7.5, 0.0, 0.5), (15.0, 7.5, 0.5), (7.5, 15.0, 0.5), (0.0, 7.5, 0.5)],
        max_steps=400,
    ),
    "dyn-demo": EpisodeSpec(
        Mode.DYNAMIC,
        ((0.0, 0.0), (15.0, 0.0)),
        (
            Obstacle(0, 10.0, 6.0, 0.0, -0.6, 0.5),     # crossing from port
            Obstacle(1, 20.0, 0.5, -0.5, 0.0, 0.5),     # head-on
            Obstacle(2, 4.0, -3.0, 0.3, 0.4, 0.3),      # crossing from starboard
            Obstacle(3, 12.0, -2.0, 0.0, 0.0, 0.8),     # drifting buoy
        ),
        seed=0,
        name="dyn-demo",
    ),
}


def builtin_names() -> List[str]:
    return sorted(BUILTIN_SCENARIOS)


def resolve_scenario(name_or_path: Union[str, Path]) -> EpisodeSpec:
    """
    Look up a built-in scenario by name, otherwise load it as a scenario file.

    Raises:
        ScenarioError: if it is neither
    """
    key = str(name_or_path)
    if key in BUILTIN_SCENARIOS:
        return BUILTIN_SCENARIOS[key]
    path = Path(key)
    if path.suffix.lower() == ".json" or path.exists():
        return load_scenario_file(path)
    raise ScenarioError(
        f"unknown scenario '{key}' (built-ins: {', '.join(builtin_names())})"
    )
