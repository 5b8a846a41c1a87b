"""
Guidance environment: episodes, observations, rewards and termination.
"""

from .environment import (
    ACTIONS_DEG,
    N_ACTIONS,
    EnvState,
    GuidanceEnv,
    Observation,
    Status,
    StepOutcome,
    action_to_rudder,
    env_step,
    reset,
    terminal_check,
)
from .episodes import (
    EpisodeSpec,
    Mode,
    Obstacle,
    load_scenario_file,
    sample_dynamic_episode,
    sample_static_episode,
    save_scenario_file,
    scenario_variants,
)
from .geometry import course_angle_error, cross_track_error
from .reward import reward_step
from .scenarios import BUILTIN_SCENARIOS, resolve_scenario

__all__ = [
    'ACTIONS_DEG',
    'BUILTIN_SCENARIOS',
    'N_ACTIONS',
    'EnvState',
    'EpisodeSpec',
    'GuidanceEnv',
    'Mode',
    'Observation',
    'Obstacle',
    'Status',
    'StepOutcome',
    'action_to_rudder',
    'course_angle_error',
    'cross_track_error',
    'env_step',
    'load_scenario_file',
    'reset',
    'resolve_scenario',
    'reward_step',
    'sample_dynamic_episode',
    'sample_static_episode',
    'save_scenario_file',
    'scenario_variants',
    'terminal_check',
]
