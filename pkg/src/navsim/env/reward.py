"""Shaped per-step reward and terminal bonuses."""

import math
from typing import NamedTuple

SUCCESS_REWARD = 20.0
COLLISION_PENALTY_STATIC = -100.0
COLLISION_PENALTY_DYNAMIC = -200.0


class RewardComponents(NamedTuple):
    r1: float
    r2: float
    r3: float
    r_t: float


def reward_step(d_c: float, chi_e: float, d_wp: float) -> RewardComponents:
    """
    Per-step reward for path following.

    Args:
        d_c: Cross-track error (L)
        chi_e: Course-angle error (rad)
        d_wp: Distance to the active destination (L)

    Returns:
        Cross-track, course and progress terms plus their sum
    """
    r1 = 2.0 * math.exp(-d_c * d_c / 12.5) - 1.0
    r2 = 1.3 * math.exp(-10.0 * abs(chi_e)) - 0.3
    r3 = -d_wp / 4.0
    return RewardComponents(r1, r2, r3, r1 + r2 + r3)
