"""
Collision risk: DCPA/TCPA geometry and critical obstacle selection.
"""

from .cpa import (
    CRAssessment,
    RelativeKinematics,
    assess,
    assess_obstacles,
    collision_risk,
    critical_obstacle,
    dcpa_tcpa,
    relative_kinematics,
)

__all__ = [
    'CRAssessment',
    'RelativeKinematics',
    'assess',
    'assess_obstacles',
    'collision_risk',
    'critical_obstacle',
    'dcpa_tcpa',
    'relative_kinematics',
]
