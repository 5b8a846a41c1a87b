"""
Tests for the numpy Q-network, replay buffer, schedules and DQN updates.
"""

from dataclasses import replace

import numpy as np
import pytest
from scipy import stats

from navsim.agent.dqn import act, loss_and_gradients, polyak, td_targets, update
from navsim.agent.network import AdamOptimizer, QNetwork, forward
from navsim.agent.replay import Batch, ReplayBuffer, Transition
from navsim.agent.schedules import epsilon_at, lr_at
from navsim.agent.train_config import TrainConfig
from navsim.env.episodes import Mode
from navsim.errors import ConfigError, DimensionMismatch, EmptyList, NonFiniteLoss, ShapeMismatch

WIDTHS = (3, 6, 4, 5)


def small_net(seed=0):
    return QNetwork.initialize(WIDTHS, np.random.default_rng(seed))


def random_batch(rng, n=8, obs_dim=3):
    return Batch(
        states=rng.normal(size=(n, obs_dim)),
        actions=rng.integers(0, 5, size=n),
        rewards=rng.normal(size=n),
        next_states=rng.normal(size=(n, obs_dim)),
        dones=rng.uniform(size=n) < 0.3,
    )


class TestNetwork:
    def test_shapes(self):
        net = small_net()
        assert net.widths == list(WIDTHS)
        assert [w.shape for w in net.weights] == [(3, 6), (6, 4), (4, 5)]
        assert net.obs_dim == 3 and net.n_actions == 5
        assert all(np.all(b == 0.0) for b in net.biases)

    def test_forward_single_and_batch(self):
        net = small_net()
        x = np.array([[0.1, -0.2, 0.3], [1.0, 0.0, -1.0]])
        batch = forward(net, x)
        assert batch.shape == (2, 5)
        np.testing.assert_allclose(forward(net, x[1]), batch[1])

    def test_wrong_input_size(self):
        with pytest.raises(DimensionMismatch):
            forward(small_net(), np.zeros(7))

    def test_gradients_match_finite_differences(self):
        rng = np.random.default_rng(5)
        net = small_net(1)
        batch = random_batch(rng)
        targets = rng.normal(size=len(batch))
        _, grads = loss_and_gradients(net, batch, targets)
        eps = 1e-6
        for p, g in zip(net.parameters(), grads):
            numeric = np.zeros_like(p)
            for idx in np.ndindex(p.shape):
                saved = p[idx]
                p[idx] = saved + eps
                up, _ = loss_and_gradients(net, batch, targets)
                p[idx] = saved - eps
                down, _ = loss_and_gradients(net, batch, targets)
                p[idx] = saved
                numeric[idx] = (up - down) / (2 * eps)
            np.testing.assert_allclose(g, numeric, rtol=1e-5, atol=1e-8)

    def test_copy_is_independent(self):
        net = small_net()
        clone = net.copy()
        clone.weights[0][0, 0] += 1.0
        assert net.weights[0][0, 0] != clone.weights[0][0, 0]

    def test_adam_first_step_moves_by_lr(self):
        p = [np.array([1.0, -2.0, 3.0])]
        opt = AdamOptimizer(p)
        opt.step(p, [np.array([0.5, -4.0, 1e-3])], lr=0.01)
        np.testing.assert_allclose(p[0], [0.99, -1.99, 2.99], atol=1e-6)


class TestReplayBuffer:
    def test_overwrites_oldest(self):
        buf = ReplayBuffer(obs_dim=2, capacity=3)
        for i in range(5):
            buf.add(Transition(np.full(2, i), i % 5, float(i), np.full(2, i + 1), False))
        assert len(buf) == 3
        assert sorted(buf.rewards.tolist()) == [2.0, 3.0, 4.0]
        assert buf.position == 2

    def test_rejects_bad_action(self):
        buf = ReplayBuffer(obs_dim=2, capacity=3)
        with pytest.raises(ValueError):
            buf.add(Transition(np.zeros(2), 5, 0.0, np.zeros(2), False))

    def test_empty_buffer_cannot_sample(self):
        with pytest.raises(ValueError):
            ReplayBuffer(obs_dim=2, capacity=3).sample(1, np.random.default_rng(0))

    def test_sampling_is_uniform(self):
        buf = ReplayBuffer(obs_dim=1, capacity=50)
        for i in range(50):
            buf.add(Transition(np.zeros(1), 0, float(i), np.zeros(1), False))
        idx = buf.sample_indices(100_000, np.random.default_rng(123))
        counts = np.bincount(idx, minlength=50)
        assert stats.chisquare(counts).pvalue > 0.001

    def test_sample_only_filled_slots(self):
        buf = ReplayBuffer(obs_dim=1, capacity=50)
        for i in range(4):
            buf.add(Transition(np.zeros(1), 1, float(i), np.zeros(1), i == 3))
        batch = buf.sample(200, np.random.default_rng(0))
        assert set(batch.rewards.tolist()) <= {0.0, 1.0, 2.0, 3.0}
        assert len(batch) == 200


class TestSchedules:
    @pytest.mark.parametrize("episode, expected", [(0, 1.0), (25, 0.75), (100, 0.0)])
    def test_epsilon(self, episode, expected):
        assert epsilon_at(episode, 100) == pytest.approx(expected)

    def test_epsilon_out_of_range(self):
        with pytest.raises(ValueError):
            epsilon_at(101, 100)

    def test_lr_continuous(self):
        cfg = TrainConfig.static()
        assert lr_at(0, cfg) == 7.5e-4
        assert lr_at(50_000, cfg) == pytest.approx(3e-4)
        assert lr_at(25_000, cfg) == pytest.approx(7.5e-4 * 0.4 ** 0.5)

    def test_lr_staircase(self):
        cfg = TrainConfig.static(staircase=True)
        assert lr_at(49_999, cfg) == 7.5e-4
        assert lr_at(100_000, cfg) == pytest.approx(7.5e-4 * 0.16)


class TestActing:
    def test_greedy_picks_argmax(self):
        net = QNetwork.zeros(WIDTHS)
        net.biases[-1][3] = 1.0
        assert act(net, np.zeros(3), 0.0, np.random.default_rng(0)) == 3

    def test_ties_go_to_lowest_index(self):
        assert act(QNetwork.zeros(WIDTHS), np.zeros(3), 0.0, np.random.default_rng(0)) == 0

    def test_full_exploration_covers_all_actions(self):
        net = QNetwork.zeros(WIDTHS)
        net.biases[-1][3] = 1.0
        rng = np.random.default_rng(9)
        counts = np.bincount([act(net, np.zeros(3), 1.0, rng) for _ in range(5000)], minlength=5)
        assert stats.chisquare(counts).pvalue > 0.001

    def test_epsilon_range(self):
        with pytest.raises(ValueError):
            act(small_net(), np.zeros(3), 1.5, np.random.default_rng(0))


class TestUpdates:
    def test_td_targets_stop_at_terminals(self):
        rng = np.random.default_rng(2)
        batch = random_batch(rng)
        target = small_net(3)
        y = td_targets(batch, target, 0.97)
        q_next = target(batch.next_states).max(axis=1)
        expected = np.where(batch.dones, batch.rewards, batch.rewards + 0.97 * q_next)
        np.testing.assert_allclose(y, expected)

    def test_empty_batch(self):
        empty = Batch(np.zeros((0, 3)), np.zeros(0, dtype=int), np.zeros(0), np.zeros((0, 3)),
                      np.zeros(0, dtype=bool))
        with pytest.raises(EmptyList):
            td_targets(empty, small_net(), 0.97)

    def test_repeated_updates_on_fixed_batch(self):
        rng = np.random.default_rng(4)
        net, target = small_net(0), small_net(0)
        batch = replace(random_batch(rng, n=16), rewards=np.ones(16), dones=np.ones(16, dtype=bool))
        opt = AdamOptimizer(net.parameters())
        losses = [update(net, target, batch, 1e-3, opt, 0.97) for _ in range(200)]
        assert np.all(np.diff(losses[10:]) < 0.0)
        assert losses[-1] < 0.9 * losses[0]

    def test_batch_rebuilds_with_replace(self):
        batch = random_batch(np.random.default_rng(1), n=3)
        rebuilt = replace(batch, rewards=np.ones(3))
        assert len(rebuilt) == 3
        np.testing.assert_array_equal(rebuilt.states, batch.states)
        np.testing.assert_array_equal(rebuilt.rewards, np.ones(3))

    def test_non_finite_loss_leaves_net_untouched(self):
        rng = np.random.default_rng(6)
        net = small_net(0)
        before = [p.copy() for p in net.parameters()]
        batch = random_batch(rng)
        batch.rewards[0] = np.nan
        with pytest.raises(NonFiniteLoss):
            update(net, small_net(1), batch, 1e-3, AdamOptimizer(net.parameters()), 0.97)
        for a, b in zip(before, net.parameters()):
            np.testing.assert_array_equal(a, b)

    def test_polyak_converges_geometrically(self):
        target = QNetwork.zeros(WIDTHS)
        net = QNetwork([np.ones_like(w) for w in target.weights], [np.ones_like(b) for b in target.biases])
        for _ in range(50):
            polyak(target, net, 0.01)
        expected = 1.0 - 0.99 ** 50
        for p in target.parameters():
            np.testing.assert_allclose(p, expected, rtol=1e-12)

    def test_polyak_shape_mismatch(self):
        with pytest.raises(ShapeMismatch):
            polyak(QNetwork.zeros(WIDTHS), QNetwork.zeros((3, 4, 5)), 0.01)


class TestTrainConfig:
    def test_presets(self):
        static, dynamic = TrainConfig.static(), TrainConfig.dynamic()
        assert static.widths == (7, 128, 128, 5)
        assert dynamic.widths == (9, 128, 128, 5)
        assert (dynamic.decay_rate, dynamic.episodes, dynamic.update_every) == (0.5, 8000, 5)

    def test_from_dict_uses_mode_preset(self):
        cfg = TrainConfig.from_dict({"mode": "dynamic", "episodes": 10})
        assert cfg.mode is Mode.DYNAMIC
        assert cfg.decay_rate == 0.5
        assert cfg.episodes == 10

    @pytest.mark.parametrize("doc", [
        {"learning_rate": 0.1},
        {"gamma": 1.0},
        {"mode": "hybrid"},
        {"episodes": 0},
        {"hidden": [64, 0]},
    ])
    def test_invalid(self, doc):
        with pytest.raises(ConfigError):
            TrainConfig.from_dict(doc)

    def test_yaml(self, tmp_path):
        path = tmp_path / "cfg.yaml"
        path.write_text("mode: static\nepisodes: 12\nhidden: [16, 16]\nseed: 4\n")
        cfg = TrainConfig.from_yaml(path)
        assert cfg.widths == (7, 16, 16, 5)
        assert cfg.seed == 4

    def test_missing_yaml(self, tmp_path):
        with pytest.raises(ConfigError, match="not found"):
            TrainConfig.from_yaml(tmp_path / "missing.yaml")

    def test_overrides_skip_none(self):
        cfg = TrainConfig.static().with_overrides(episodes=None, seed=3)
        assert cfg.episodes == 9000 and cfg.seed == 3
