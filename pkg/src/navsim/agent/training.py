"""
DQN training loop.

One episode is sampled per iteration, every environment step is stored in
the replay buffer, a gradient update runs every update_every steps once a
full batch is available, and the target network is Polyak-averaged on its
own schedule. A run is fully determined by its config (seed included).
"""

import json
import time
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, List, Optional, Union

import numpy as np
from tqdm import tqdm

from ..env.environment import GuidanceEnv, Status
from ..env.episodes import EpisodeSpec, Mode, sample_dynamic_episode, sample_static_episode
from ..errors import NonFiniteLoss
from ..utils.logger import get_agent_logger
from .checkpoint import save_checkpoint
from .dqn import act, polyak, update
from .network import AdamOptimizer, QNetwork
from .replay import ReplayBuffer, Transition
from .schedules import epsilon_at, lr_at
from .train_config import TrainConfig

logger = get_agent_logger()

MOVING_AVERAGE_WINDOW = 100

# Statuses that end the return; a step-limit cut still bootstraps
TERMINAL_STATUSES = {Status.SUCCESS, Status.COLLISION, Status.DIVERGED}

LOG_FILE = "training_log.jsonl"


@dataclass
class TrainingResult:
    net: QNetwork
    records: List[dict]
    checkpoints: List[Path] = field(default_factory=list)
    log_path: Optional[Path] = None
    update_steps: int = 0


def episode_sampler(cfg: TrainConfig) -> Callable[[np.random.Generator], EpisodeSpec]:
    """Training episode generator for the configured mode."""
    if cfg.mode is Mode.DYNAMIC:
        return lambda rng: sample_dynamic_episode(rng, max_steps=cfg.max_steps)
    return lambda rng: sample_static_episode(rng, obstacles=cfg.obstacles, max_steps=cfg.max_steps)


def train(env_factory: Callable[[], GuidanceEnv], cfg: TrainConfig,
          out_dir: Optional[Union[str, Path]] = None, progress: bool = True) -> TrainingResult:
    """
    Train a Q-network from scratch.

    Args:
        env_factory: Builds the environment used for the whole run
        cfg: Hyperparameters and seed
        out_dir: Directory for the training log and checkpoints (None keeps everything in memory)
        progress: Show a tqdm progress bar

    Returns:
        Final network, per-episode log records and written checkpoints

    Raises:
        NonFiniteLoss: when an update diverges; the last good network is saved first
    """
    env = env_factory()
    init_seq, episode_seq, action_seq, replay_seq = np.random.SeedSequence(cfg.seed).spawn(4)
    episode_rng = np.random.default_rng(episode_seq)
    action_rng = np.random.default_rng(action_seq)
    replay_rng = np.random.default_rng(replay_seq)

    net = QNetwork.initialize(cfg.widths, np.random.default_rng(init_seq))
    target = net.copy()
    optimizer = AdamOptimizer(net.parameters())
    buffer = ReplayBuffer(cfg.obs_dim, cfg.buffer_capacity)
    sample_spec = episode_sampler(cfg)

    out_path = Path(out_dir) if out_dir is not None else None
    log_file = None
    if out_path is not None:
        out_path.mkdir(parents=True, exist_ok=True)
        log_file = open(out_path / LOG_FILE, "w", encoding="utf-8")

    result = TrainingResult(net, [], log_path=out_path / LOG_FILE if out_path else None)
    window: deque = deque(maxlen=MOVING_AVERAGE_WINDOW)
    env_steps = 0
    update_steps = 0
    started = time.monotonic()

    def checkpoint(name: str) -> Optional[Path]:
        if out_path is None:
            return None
        path = save_checkpoint(out_path / "checkpoints" / name, net, step=update_steps,
                               config=cfg.to_dict(), rng_state=action_rng.bit_generator.state)
        result.checkpoints.append(path)
        return path

    logger.info(f"Training {cfg.mode.value} agent: {cfg.episodes} episodes, seed {cfg.seed}")
    bar = tqdm(range(cfg.episodes), desc="Training", unit="ep", disable=not progress)
    try:
        for episode in bar:
            epsilon = epsilon_at(episode, cfg.episodes)
            obs = env.reset(sample_spec(episode_rng)).as_array()
            episode_return, losses = 0.0, []
            while True:
                action = act(net, obs, epsilon, action_rng)
                outcome = env.step(action)
                next_obs = outcome.observation.as_array()
                buffer.add(Transition(obs, action, outcome.reward, next_obs,
                                      outcome.status in TERMINAL_STATUSES))
                episode_return += outcome.reward
                env_steps += 1
                obs = next_obs

                if env_steps % cfg.update_every == 0 and len(buffer) >= cfg.batch_size:
                    batch = buffer.sample(cfg.batch_size, replay_rng)
                    try:
                        loss = update(net, target, batch, lr_at(update_steps, cfg), optimizer, cfg.gamma)
                    except NonFiniteLoss as e:
                        path = checkpoint("last_good.ckpt")
                        logger.error(f"Training diverged at episode {episode}: {e}")
                        raise NonFiniteLoss(str(e), path) from e
                    update_steps += 1
                    losses.append(loss)
                if env_steps % cfg.target_update_every == 0:
                    polyak(target, net, cfg.tau)
                if outcome.status.is_terminal:
                    break

            window.append(episode_return)
            record = {
                "episode": episode,
                "return": episode_return,
                "moving_average": float(np.mean(window)),
                "epsilon": epsilon,
                "steps": env.state.step_count,
                "status": outcome.status.value,
                "loss": float(np.mean(losses)) if losses else None,
            }
            if cfg.log_wall_time:
                record["wall_time"] = round(time.monotonic() - started, 3)
            result.records.append(record)
            if log_file is not None:
                log_file.write(json.dumps(record) + "\n")
            bar.set_postfix(avg_return=f"{record['moving_average']:.2f}", eps=f"{epsilon:.2f}")

            if (episode + 1) % cfg.checkpoint_every == 0:
                checkpoint(f"episode_{episode + 1:05d}.ckpt")
                logger.info(
                    f"Episode {episode + 1}/{cfg.episodes}: moving average return "
                    f"{record['moving_average']:.2f}, {update_steps} updates"
                )
    finally:
        bar.close()
        if log_file is not None:
            log_file.close()

    checkpoint("final.ckpt")
    result.update_steps = update_steps
    logger.info(f"Training finished after {env_steps} environment steps and {update_steps} updates")
    return result
