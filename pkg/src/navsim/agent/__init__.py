"""
Deep Q-learning agent: network, replay, schedules, training and evaluation.
"""

from .checkpoint import Checkpoint, load_checkpoint, save_checkpoint
from .dqn import act, polyak, td_targets, update
from .evaluation import (
    EpisodeResult,
    EvaluationMetrics,
    EvaluationReport,
    evaluate,
    fixed_policy,
    greedy_policy,
    run_episode,
)
from .network import AdamOptimizer, QNetwork, forward
from .replay import Batch, ReplayBuffer, Transition
from .schedules import epsilon_at, lr_at
from .train_config import TrainConfig
from .training import TrainingResult, train

__all__ = [
    'AdamOptimizer',
    'Batch',
    'Checkpoint',
    'EpisodeResult',
    'EvaluationMetrics',
    'EvaluationReport',
    'QNetwork',
    'ReplayBuffer',
    'TrainConfig',
    'TrainingResult',
    'Transition',
    'act',
    'epsilon_at',
    'evaluate',
    'fixed_policy',
    'forward',
    'greedy_policy',
    'load_checkpoint',
    'lr_at',
    'polyak',
    'run_episode',
    'save_checkpoint',
    'td_targets',
    'train',
    'update',
]
