"""Circular experience replay with uniform sampling."""

from dataclasses import dataclass

import numpy as np

DEFAULT_CAPACITY = 100_000


@dataclass(frozen=True)
class Transition:
    s: np.ndarray
    a: int
    r: float
    s_next: np.ndarray
    done: bool


@dataclass(frozen=True)
class Batch:
    """Column arrays of sampled transitions; len() is the number of rows."""

    states: np.ndarray
    actions: np.ndarray
    rewards: np.ndarray
    next_states: np.ndarray
    dones: np.ndarray

    def __len__(self) -> int:
        return len(self.actions)


class ReplayBuffer:
    """Fixed-capacity ring of transitions; the oldest entry is overwritten first."""

    def __init__(self, obs_dim: int, capacity: int = DEFAULT_CAPACITY):
        if capacity <= 0:
            raise ValueError(f"capacity must be positive, got {capacity}")
        self.capacity = capacity
        self.obs_dim = obs_dim
        self.states = np.zeros((capacity, obs_dim))
        self.actions = np.zeros(capacity, dtype=np.int64)
        self.rewards = np.zeros(capacity)
        self.next_states = np.zeros((capacity, obs_dim))
        self.dones = np.zeros(capacity, dtype=bool)
        self.position = 0
        self.size = 0

    def __len__(self) -> int:
        return self.size

    def add(self, t: Transition) -> None:
        if not 0 <= t.a < 5:
            raise ValueError(f"action must be in 0..4, got {t.a}")
        i = self.position
        self.states[i] = t.s
        self.actions[i] = t.a
        self.rewards[i] = t.r
        self.next_states[i] = t.s_next
        self.dones[i] = t.done
        self.position = (i + 1) % self.capacity
        self.size = min(self.size + 1, self.capacity)

    def sample_indices(self, n: int, rng: np.random.Generator) -> np.ndarray:
        """Uniform indices with replacement over the current contents."""
        if self.size == 0:
            raise ValueError("cannot sample from an empty buffer")
        return rng.integers(0, self.size, size=n)

    def gather(self, idx: np.ndarray) -> Batch:
        return Batch(self.states[idx], self.actions[idx], self.rewards[idx],
                     self.next_states[idx], self.dones[idx])

    def sample(self, n: int, rng: np.random.Generator) -> Batch:
        return self.gather(self.sample_indices(n, rng))
