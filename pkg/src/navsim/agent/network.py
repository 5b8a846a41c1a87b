"""
Fully connected Q-network in numpy with tanh hidden layers and a linear head.

Weights are stored as (fan_in, fan_out) so a layer is x @ W + b.
"""

from dataclasses import dataclass
from typing import List, Sequence, Tuple, Union

import numpy as np

from ..errors import DimensionMismatch, ShapeMismatch

HIDDEN = (128, 128)
ACTIVATION = "tanh"

Array = np.ndarray


@dataclass
class QNetwork:
    """Layer parameters [(W1, b1), (W2, b2), ...] of an MLP."""

    weights: List[Array]
    biases: List[Array]

    @classmethod
    def initialize(cls, widths: Sequence[int], rng: np.random.Generator) -> "QNetwork":
        """Uniform fan-in initialization, biases at zero."""
        weights, biases = [], []
        for fan_in, fan_out in zip(widths[:-1], widths[1:]):
            limit = 1.0 / np.sqrt(fan_in)
            weights.append(rng.uniform(-limit, limit, size=(fan_in, fan_out)))
            biases.append(np.zeros(fan_out))
        return cls(weights, biases)

    @classmethod
    def zeros(cls, widths: Sequence[int]) -> "QNetwork":
        return cls([np.zeros((a, b)) for a, b in zip(widths[:-1], widths[1:])],
                   [np.zeros(b) for b in widths[1:]])

    @property
    def widths(self) -> List[int]:
        return [self.weights[0].shape[0]] + [w.shape[1] for w in self.weights]

    @property
    def obs_dim(self) -> int:
        return self.weights[0].shape[0]

    @property
    def n_actions(self) -> int:
        return self.weights[-1].shape[1]

    def parameters(self) -> List[Array]:
        """Parameter arrays in storage order: each layer's weights, then its bias."""
        params = []
        for w, b in zip(self.weights, self.biases):
            params.extend((w, b))
        return params

    def copy(self) -> "QNetwork":
        return QNetwork([w.copy() for w in self.weights], [b.copy() for b in self.biases])

    def is_finite(self) -> bool:
        return all(np.all(np.isfinite(p)) for p in self.parameters())

    def check_input(self, x: Array) -> None:
        if x.shape[-1] != self.obs_dim:
            raise DimensionMismatch(
                f"observation has {x.shape[-1]} components, network expects {self.obs_dim}"
            )

    def activations(self, x: Array) -> Tuple[List[Array], Array]:
        """Hidden activations (input first) and the output for a batch."""
        acts = [x]
        h = x
        last = len(self.weights) - 1
        for i, (w, b) in enumerate(zip(self.weights, self.biases)):
            z = h @ w + b
            if i == last:
                return acts, z
            h = np.tanh(z)
            acts.append(h)
        raise AssertionError("network has no layers")

    def __call__(self, x: Array) -> Array:
        x = np.asarray(x, dtype=float)
        self.check_input(x)
        return self.activations(x)[1]

    def backward(self, acts: List[Array], grad_out: Array) -> List[Array]:
        """Gradients of a scalar loss given dLoss/dOutput, in parameters() order."""
        grads: List[Array] = []
        delta = grad_out
        for i in range(len(self.weights) - 1, -1, -1):
            h = acts[i]
            grads.append(delta.sum(axis=0))
            grads.append(h.T @ delta)
            if i > 0:
                delta = (delta @ self.weights[i].T) * (1.0 - h * h)
        grads.reverse()
        return grads


def forward(net: QNetwork, obs) -> Array:
    """
    Q-values of one observation (or a batch).

    Args:
        net: Q-network
        obs: Observation, 1-D array or 2-D batch

    Returns:
        One Q-value per action (or a row per batch item)

    Raises:
        DimensionMismatch: if the observation size does not match the network
    """
    x = obs.as_array() if hasattr(obs, "as_array") else np.asarray(obs, dtype=float)
    return net(x)


def check_same_shapes(a: QNetwork, b: QNetwork) -> None:
    pa, pb = a.parameters(), b.parameters()
    if len(pa) != len(pb) or any(x.shape != y.shape for x, y in zip(pa, pb)):
        raise ShapeMismatch(f"networks differ in shape: {a.widths} vs {b.widths}")


class AdamOptimizer:
    """Adam with bias correction; state is one moment pair per parameter array."""

    def __init__(self, params: Sequence[Array], beta1: float = 0.9, beta2: float = 0.999,
                 eps: float = 1e-8):
        self.beta1 = beta1
        self.beta2 = beta2
        self.eps = eps
        self.t = 0
        self.m = [np.zeros_like(p) for p in params]
        self.v = [np.zeros_like(p) for p in params]

    def step(self, params: Sequence[Array], grads: Sequence[Array], lr: float) -> None:
        """Update params in place."""
        self.t += 1
        c1 = 1.0 - self.beta1 ** self.t
        c2 = 1.0 - self.beta2 ** self.t
        for p, g, m, v in zip(params, grads, self.m, self.v):
            m *= self.beta1
            m += (1.0 - self.beta1) * g
            v *= self.beta2
            v += (1.0 - self.beta2) * g * g
            p -= lr * (m / c1) / (np.sqrt(v / c2) + self.eps)
