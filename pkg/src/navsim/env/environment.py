"""
Guidance environment: observation assembly, termination and step orchestration.

The module-level functions are pure; GuidanceEnv wraps them with the
reset()/step() interface used by training and evaluation.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np

from ..config import SimConfig, config
from ..dynamics.integrator import rk4_step, wrap_angle
from ..dynamics.mmg import self_propulsion_rate
from ..dynamics.params import HydroParams
from ..dynamics.state import VesselState
from ..risk.cpa import CRAssessment, assess_obstacles, critical_obstacle
from ..utils.logger import get_env_logger
from .episodes import EpisodeSpec, Mode
from .geometry import course_angle_error, cross_track_error, distance
from .reward import (
    COLLISION_PENALTY_DYNAMIC,
    COLLISION_PENALTY_STATIC,
    SUCCESS_REWARD,
    reward_step,
)

logger = get_env_logger()

# Rudder commands of the five discrete actions (degrees)
ACTIONS_DEG = (-35.0, -20.0, 0.0, 20.0, 35.0)
N_ACTIONS = len(ACTIONS_DEG)


class Status(str, Enum):
    RUNNING = "Running"
    SUCCESS = "Success"
    COLLISION = "Collision"
    DIVERGED = "Diverged"
    STEP_LIMIT = "StepLimit"

    @property
    def is_terminal(self) -> bool:
        return self is not Status.RUNNING


def action_to_rudder(action_index: int) -> float:
    """Commanded rudder angle (rad) of an action index."""
    if not 0 <= action_index < N_ACTIONS:
        raise ValueError(f"action index must be in 0..{N_ACTIONS - 1}, got {action_index}")
    return math.radians(ACTIONS_DEG[action_index])


@dataclass(frozen=True)
class Observation:
    """Network input: path terms, yaw rate and the critical obstacle.

    v_x and v_y are only present in dynamic mode.
    """

    d_c: float
    chi_e: float
    d_wp: float
    r: float
    d_obs: float
    psi_obs: float
    S_obs: float
    v_x: Optional[float] = None
    v_y: Optional[float] = None

    @property
    def dim(self) -> int:
        return 7 if self.v_x is None else 9

    def as_array(self) -> np.ndarray:
        values = [self.d_c, self.chi_e, self.d_wp, self.r, self.d_obs, self.psi_obs, self.S_obs]
        if self.v_x is not None:
            values += [self.v_x, self.v_y]
        return np.array(values, dtype=float)


@dataclass(frozen=True)
class EnvState:
    vessel: VesselState
    step_count: int = 0
    leg: int = 0


@dataclass(frozen=True)
class StepOutcome:
    """Result of one agent step; reward includes the terminal bonus or penalty."""

    reward: float
    r1: float
    r2: float
    r3: float
    status: Status
    observation: Observation
    terminal_reward: float = 0.0
    critical_id: Optional[int] = None
    critical_cr: float = 0.0
    assessments: Tuple[CRAssessment, ...] = field(default=(), repr=False)


def obstacle_time(step_count: int, sim: SimConfig = None) -> float:
    sim = sim or config.sim
    return step_count * sim.control_period


def _assessments(vessel: VesselState, spec: EpisodeSpec, t: float) -> List[CRAssessment]:
    return assess_obstacles(
        vessel.position, vessel.velocity_gcs(),
        ((o.id, o.position_at(t), o.velocity) for o in spec.obstacles),
    )


def observe(vessel: VesselState, spec: EpisodeSpec, leg: int, t: float,
            sim: SimConfig = None) -> Tuple[Observation, List[CRAssessment], Optional[int]]:
    """Assemble the observation for the active leg at obstacle time t."""
    sim = sim or config.sim
    start, dest = spec.leg(leg)
    vel = vessel.velocity_gcs()
    d_c = cross_track_error(vessel.position, start, dest)
    chi_e = course_angle_error(vel, start, dest, heading=vessel.psi)
    d_wp = distance(vessel.position, dest)

    assessments = _assessments(vessel, spec, t)
    dynamic = spec.mode is Mode.DYNAMIC
    if not assessments:
        return (Observation(d_c, chi_e, d_wp, vessel.r, sim.sentinel_distance, 0.0, 0.0,
                            0.0 if dynamic else None, 0.0 if dynamic else None),
                assessments, None)

    crit_id = critical_obstacle(assessments)
    crit = next(a for a in assessments if a.obstacle_id == crit_id)
    obstacle = next(o for o in spec.obstacles if o.id == crit_id)
    psi_obs = wrap_angle(crit.theta - vessel.psi)
    v_x = v_y = None
    if dynamic:
        wx, wy = obstacle.vx - vel[0], obstacle.vy - vel[1]
        c, s = math.cos(vessel.psi), math.sin(vessel.psi)
        v_x, v_y = wx * c + wy * s, -wx * s + wy * c
    return (Observation(d_c, chi_e, d_wp, vessel.r, crit.R, psi_obs, obstacle.radius, v_x, v_y),
            assessments, crit_id)


def terminal_check(ship: VesselState, spec: EpisodeSpec, step_count: int, leg: Optional[int] = None,
                   sim: SimConfig = None) -> Tuple[Status, float]:
    """
    Episode status after a step and its terminal reward.

    Collision beats Success, which beats Diverged, which beats the step limit.
    The ship collides when its distance to an obstacle centre is within the
    obstacle radius plus half a ship length.

    Args:
        ship: Vessel state after the step
        spec: Episode definition
        step_count: Agent steps taken so far
        leg: Active leg (default: the last one)
    """
    sim = sim or config.sim
    if leg is None:
        leg = spec.n_legs - 1
    t = obstacle_time(step_count, sim)
    for o in spec.obstacles:
        if distance(ship.position, o.position_at(t)) <= o.radius + sim.ship_half_length:
            penalty = COLLISION_PENALTY_DYNAMIC if spec.mode is Mode.DYNAMIC else COLLISION_PENALTY_STATIC
            return Status.COLLISION, penalty

    start, dest = spec.leg(leg)
    if leg == spec.n_legs - 1 and distance(ship.position, dest) <= spec.success_radius:
        return Status.SUCCESS, SUCCESS_REWARD

    v1 = (dest[0] - start[0], dest[1] - start[1])
    v2 = (dest[0] - ship.x, dest[1] - ship.y)
    vel = ship.velocity_gcs()
    if v1[0] * v2[0] + v1[1] * v2[1] < 0.0 and vel[0] * v2[0] + vel[1] * v2[1] < 0.0:
        return Status.DIVERGED, 0.0

    if step_count >= spec.max_steps:
        return Status.STEP_LIMIT, 0.0
    return Status.RUNNING, 0.0


def reset(spec: EpisodeSpec, n_sp: float, sim: SimConfig = None) -> Tuple[EnvState, Observation]:
    """Ship at the origin heading +X at unit surge speed, rudder amidships."""
    vessel = VesselState(x=0.0, y=0.0, psi=0.0, u=1.0, v=0.0, r=0.0, delta=0.0, delta_c=0.0, n=n_sp)
    obs, _, _ = observe(vessel, spec, 0, 0.0, sim)
    return EnvState(vessel, 0, 0), obs


def env_step(state: EnvState, spec: EpisodeSpec, action_index: int, params: HydroParams,
             sim: SimConfig = None) -> Tuple[EnvState, StepOutcome]:
    """
    Apply one action for a control period and score the result.

    Raises:
        NonFiniteState: propagated from the integrator
    """
    sim = sim or config.sim
    vessel = state.vessel.with_command(action_to_rudder(action_index))
    for _ in range(sim.substeps):
        vessel = rk4_step(vessel, params, sim.dt)
    step_count = state.step_count + 1
    t = obstacle_time(step_count, sim)

    leg = state.leg
    while leg < spec.n_legs - 1 and distance(vessel.position, spec.leg(leg)[1]) <= spec.success_radius:
        leg += 1
        logger.debug(f"Waypoint reached at step {step_count}, switching to leg {leg}")

    obs, assessments, crit_id = observe(vessel, spec, leg, t, sim)
    r1, r2, r3, r_t = reward_step(obs.d_c, obs.chi_e, obs.d_wp)
    status, terminal = terminal_check(vessel, spec, step_count, leg, sim)
    crit_cr = next((a.CR for a in assessments if a.obstacle_id == crit_id), 0.0)
    outcome = StepOutcome(r_t + terminal, r1, r2, r3, status, obs, terminal, crit_id, crit_cr,
                          tuple(assessments))
    return EnvState(vessel, step_count, leg), outcome


class GuidanceEnv:
    """Stateful wrapper: one episode at a time, single-threaded."""

    def __init__(self, params: HydroParams, n_sp: Optional[float] = None, sim: SimConfig = None):
        self.params = params
        self.sim = sim or config.sim
        self.n_sp = self_propulsion_rate(params) if n_sp is None else n_sp
        self.spec: Optional[EpisodeSpec] = None
        self.state: Optional[EnvState] = None
        self.last_outcome: Optional[StepOutcome] = None

    @property
    def time(self) -> float:
        return obstacle_time(self.state.step_count, self.sim) if self.state else 0.0

    def reset(self, spec: EpisodeSpec) -> Observation:
        self.spec = spec
        self.state, obs = reset(spec, self.n_sp, self.sim)
        self.last_outcome = None
        return obs

    def step(self, action_index: int) -> StepOutcome:
        if self.spec is None or self.state is None:
            raise RuntimeError("reset() must be called before step()")
        if self.last_outcome is not None and self.last_outcome.status.is_terminal:
            raise RuntimeError("episode has ended; call reset()")
        self.state, outcome = env_step(self.state, self.spec, action_index, self.params, self.sim)
        self.last_outcome = outcome
        return outcome

    def critical_assessment(self) -> Optional[CRAssessment]:
        """Assessment of the obstacle feeding the current observation."""
        if self.state is None or self.spec is None or not self.spec.obstacles:
            return None
        _, assessments, crit_id = observe(self.state.vessel, self.spec, self.state.leg, self.time, self.sim)
        return next(a for a in assessments if a.obstacle_id == crit_id)
