"""
Closest point of approach and collision risk between the ownship and obstacles.

All quantities are non-dimensional: distances in L, speeds in U, times in L/U.
Static obstacles use the same code path with zero velocity.
"""

import math
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

from ..dynamics.integrator import wrap_angle
from ..errors import EmptyList, StationaryRelative
from ..utils.logger import get_env_logger

logger = get_env_logger()

# Relative speeds at or below this are treated as no relative motion
STATIONARY_THRESHOLD = 1e-9

Vec = Tuple[float, float]


@dataclass(frozen=True)
class RelativeKinematics:
    """Range, relative speed and the azimuths needed for DCPA/TCPA."""

    R: float
    V_R: float
    chi_R: float
    chi_os: float
    theta: float


@dataclass(frozen=True)
class CRAssessment:
    """Collision risk of one obstacle relative to the ownship."""

    obstacle_id: int
    R: float
    V_R: float
    chi_R: float
    chi_os: float
    theta: float
    DCPA: float
    TCPA: float
    CR: float


def relative_kinematics(ship_pos: Vec, ship_vel_gcs: Vec, obs_pos: Vec,
                        obs_vel_gcs: Vec) -> RelativeKinematics:
    """Geometry of an encounter in the global frame."""
    dx, dy = obs_pos[0] - ship_pos[0], obs_pos[1] - ship_pos[1]
    wx, wy = obs_vel_gcs[0] - ship_vel_gcs[0], obs_vel_gcs[1] - ship_vel_gcs[1]
    obs_speed = math.hypot(*obs_vel_gcs)
    chi_os = wrap_angle(math.atan2(obs_vel_gcs[1], obs_vel_gcs[0])) if obs_speed > 0.0 else 0.0
    return RelativeKinematics(
        R=math.hypot(dx, dy),
        V_R=math.hypot(wx, wy),
        chi_R=wrap_angle(math.atan2(wy, wx)),
        chi_os=chi_os,
        theta=wrap_angle(math.atan2(dy, dx)),
    )


def dcpa_tcpa(rel: RelativeKinematics) -> Tuple[float, float]:
    """
    Distance and time at the closest point of approach.

    The angle between the relative velocity and the line of sight from the
    obstacle back to the ship fixes both quantities: DCPA = R sin(a),
    TCPA = R / V_R cos(a) with a = chi_R - theta - pi.

    Raises:
        StationaryRelative: if V_R is at or below the stationary threshold
    """
    if rel.V_R <= STATIONARY_THRESHOLD:
        raise StationaryRelative(f"relative speed {rel.V_R:.3e} too small for a closest approach")
    a = rel.chi_R - rel.theta - math.pi
    return (rel.R * math.sin(a), rel.R / rel.V_R * math.cos(a))


def collision_risk(dcpa: float, tcpa: float) -> float:
    """exp(-|DCPA| - TCPA) for an approaching obstacle, else 0."""
    if not tcpa > 0.0:
        return 0.0
    return math.exp(-abs(dcpa) - tcpa)


def assess(obstacle_id: int, ship_pos: Vec, ship_vel_gcs: Vec, obs_pos: Vec,
           obs_vel_gcs: Vec) -> CRAssessment:
    """Full risk assessment of one obstacle; no relative motion gives CR = 0."""
    rel = relative_kinematics(ship_pos, ship_vel_gcs, obs_pos, obs_vel_gcs)
    try:
        dcpa, tcpa = dcpa_tcpa(rel)
    except StationaryRelative:
        logger.debug(f"Obstacle {obstacle_id}: no relative motion, CR = 0")
        dcpa, tcpa = rel.R, math.inf
    cr = collision_risk(dcpa, tcpa) if math.isfinite(tcpa) else 0.0
    return CRAssessment(obstacle_id, rel.R, rel.V_R, rel.chi_R, rel.chi_os, rel.theta, dcpa, tcpa, cr)


def assess_obstacles(ship_pos: Vec, ship_vel_gcs: Vec,
                     obstacles: Iterable[Tuple[int, Vec, Vec]]) -> List[CRAssessment]:
    """Assess every (id, position, velocity) triple."""
    return [assess(oid, ship_pos, ship_vel_gcs, pos, vel) for oid, pos, vel in obstacles]


def critical_obstacle(assessments: Sequence[CRAssessment]) -> int:
    """
    Id of the obstacle that feeds the observation.

    Highest CR wins; when no obstacle carries risk the nearest one is chosen.
    Ties go to the smallest id.

    Raises:
        EmptyList: if there is nothing to choose from
    """
    if not assessments:
        raise EmptyList("critical_obstacle needs at least one assessment")
    if any(a.CR > 0.0 for a in assessments):
        best = min(assessments, key=lambda a: (-a.CR, a.obstacle_id))
    else:
        best = min(assessments, key=lambda a: (a.R, a.obstacle_id))
    return best.obstacle_id
