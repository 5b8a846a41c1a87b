"""Exploration and learning-rate schedules."""

import math


def epsilon_at(episode: int, total_episodes: int) -> float:
    """Linear decay from 1 at the first episode to 0 at the last."""
    if total_episodes <= 0:
        raise ValueError(f"total_episodes must be positive, got {total_episodes}")
    if not 0 <= episode <= total_episodes:
        raise ValueError(f"episode {episode} outside [0, {total_episodes}]")
    return 1.0 - episode / total_episodes


def lr_at(update_step: int, cfg) -> float:
    """Exponential decay lr0 * rate^(step / decay_steps); staircase floors the exponent."""
    if update_step < 0:
        raise ValueError(f"update_step must be non-negative, got {update_step}")
    exponent = update_step / cfg.decay_steps
    if cfg.staircase:
        exponent = math.floor(exponent)
    return cfg.lr0 * cfg.decay_rate ** exponent
