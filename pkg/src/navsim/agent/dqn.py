"""
Deep Q-learning updates: epsilon-greedy action selection, TD targets,
the MSE gradient step and Polyak averaging of the target network.
"""

from typing import List, Tuple

import numpy as np

from ..errors import EmptyList, NonFiniteLoss
from .network import AdamOptimizer, QNetwork, check_same_shapes, forward
from .replay import Batch


def act(net: QNetwork, obs, epsilon: float, rng: np.random.Generator) -> int:
    """
    Epsilon-greedy action.

    Explores uniformly with probability epsilon, otherwise takes the argmax
    of the Q-values with ties going to the lowest index.
    """
    if not 0.0 <= epsilon <= 1.0:
        raise ValueError(f"epsilon must be in [0, 1], got {epsilon}")
    if epsilon > 0.0 and rng.uniform() < epsilon:
        return int(rng.integers(0, net.n_actions))
    return int(np.argmax(forward(net, obs)))


def td_targets(batch: Batch, target_net: QNetwork, gamma: float) -> np.ndarray:
    """y = r + gamma * max_a Q_target(s', a) * (1 - done)."""
    if len(batch) == 0:
        raise EmptyList("td_targets needs a non-empty batch")
    q_next = target_net(batch.next_states)
    return batch.rewards + gamma * q_next.max(axis=1) * (1.0 - batch.dones.astype(float))


def loss_and_gradients(net: QNetwork, batch: Batch, targets: np.ndarray) -> Tuple[float, List[np.ndarray]]:
    """Mean-squared TD error on the taken actions and its parameter gradients."""
    acts, q = net.activations(batch.states)
    rows = np.arange(len(batch))
    err = q[rows, batch.actions] - targets
    loss = float(np.mean(err * err))
    grad_out = np.zeros_like(q)
    grad_out[rows, batch.actions] = 2.0 * err / len(batch)
    return loss, net.backward(acts, grad_out)


def update(net: QNetwork, target_net: QNetwork, batch: Batch, lr: float,
           optimizer: AdamOptimizer, gamma: float) -> float:
    """
    One Adam step on the TD loss of a batch.

    Returns:
        Loss before the step

    Raises:
        NonFiniteLoss: if the loss or a gradient is NaN or infinite; net is left untouched
    """
    net.check_input(batch.states)
    targets = td_targets(batch, target_net, gamma)
    loss, grads = loss_and_gradients(net, batch, targets)
    if not np.isfinite(loss) or not all(np.all(np.isfinite(g)) for g in grads):
        raise NonFiniteLoss(f"non-finite TD loss ({loss}) at optimizer step {optimizer.t}")
    optimizer.step(net.parameters(), grads, lr)
    return loss


def polyak(target_net: QNetwork, net: QNetwork, tau: float) -> QNetwork:
    """Soft update target <- tau * net + (1 - tau) * target, in place."""
    check_same_shapes(target_net, net)
    for t, p in zip(target_net.parameters(), net.parameters()):
        t *= 1.0 - tau
        t += tau * p
    return target_net
