import numpy as np
import pytest
from scipy import stats

from ternlight.agent import PrioritizedReplay, SumTree, Transition
from ternlight.agent.reward import RewardBreakdown


def make_transition(i=0):
    br = RewardBreakdown(0.0, 0.0, 0.0, float(i))
    s = np.array([float(i)], dtype=np.float32)
    return Transition(s, i, br, s, False)


def test_sum_tree_basic():
    tree = SumTree(4)
    tree.update(0, 3.0)
    tree.update(1, 1.0)
    assert tree.total == 4.0
    assert tree.leaf_value(0) == 3.0
    assert tree.retrieve(0.5) == 0
    assert tree.retrieve(2.9) == 0
    assert tree.retrieve(3.5) == 1


def test_sum_tree_root_equals_leaf_sum_after_random_ops(rng):
    tree = SumTree(257)  # deliberately not a power of two
    values = np.zeros(257)
    for _ in range(100_000):
        leaf = int(rng.integers(0, 257))
        v = float(rng.uniform(0, 10))
        tree.update(leaf, v)
        values[leaf] = v
    assert tree.total == pytest.approx(values.sum(), rel=1e-6)


def test_insert_at_max_priority():
    buf = PrioritizedReplay(16, per_alpha=1.0, priority_epsilon=1e-3)
    buf.insert(make_transition(0))
    assert buf.tree.leaf_value(0) == 1.0  # default before any update
    buf.update_priorities([0], [4.0])
    buf.insert(make_transition(1))
    assert buf.tree.leaf_value(1) == buf.tree.leaf_value(0)


def test_sampling_ratio_three_to_one():
    buf = PrioritizedReplay(4, per_alpha=1.0, per_beta=0.4)
    buf.insert(make_transition(0))
    buf.insert(make_transition(1))
    buf.tree.update(0, 3.0)
    buf.tree.update(1, 1.0)
    rng = np.random.default_rng(99)
    draws = 100_000
    count0 = 0
    for _ in range(draws // 2):
        _, idx, _ = buf.sample(2, rng)
        count0 += int((idx == 0).sum())
    assert abs(count0 / draws - 0.75) < 0.01


def test_alpha_zero_uniform_sampling():
    buf = PrioritizedReplay(8, per_alpha=0.0, priority_epsilon=1e-3)
    for i in range(8):
        buf.insert(make_transition(i))
    # wildly different TD errors still produce uniform priorities at alpha=0
    buf.update_priorities(range(8), [0.01, 0.1, 1, 10, 100, 0.5, 5, 50])
    rng = np.random.default_rng(7)
    counts = np.zeros(8)
    draws = 100_000
    for _ in range(draws // 8):
        _, idx, _ = buf.sample(8, rng)
        for i in idx:
            counts[i] += 1
    chi = stats.chisquare(counts)
    assert chi.pvalue > 0.01


def test_beta_one_uniform_priorities_gives_unit_weights():
    buf = PrioritizedReplay(8, per_alpha=0.6, per_beta=1.0)
    for i in range(8):
        buf.insert(make_transition(i))
    rng = np.random.default_rng(3)
    _, _, weights = buf.sample(8, rng)
    assert np.all(weights == 1.0)


def test_weights_never_exceed_one(rng):
    buf = PrioritizedReplay(64, per_alpha=0.7, per_beta=0.5)
    for i in range(64):
        buf.insert(make_transition(i))
    buf.update_priorities(range(64), rng.uniform(0.01, 20.0, size=64))
    for _ in range(50):
        _, _, weights = buf.sample(32, rng)
        assert weights.max() <= 1.0 + 1e-12
        assert weights.min() > 0.0


def test_sampling_distribution_tracks_priorities(rng):
    buf = PrioritizedReplay(4, per_alpha=1.0, per_beta=0.4)
    for i in range(4):
        buf.insert(make_transition(i))
    priorities = np.array([1.0, 2.0, 3.0, 4.0])
    for i, p in enumerate(priorities):
        buf.tree.update(i, float(p))
    counts = np.zeros(4)
    draws = 40_000
    for _ in range(draws // 4):
        _, idx, _ = buf.sample(4, rng)
        for i in idx:
            counts[i] += 1
    expected = priorities / priorities.sum()
    assert np.abs(counts / draws - expected).max() < 0.015


def test_empty_and_oversized_sampling():
    buf = PrioritizedReplay(4)
    rng = np.random.default_rng(0)
    with pytest.raises(ValueError):
        buf.sample(1, rng)
    buf.insert(make_transition(0))
    with pytest.raises(ValueError):
        buf.sample(2, rng)


def test_ring_overwrite():
    buf = PrioritizedReplay(4)
    for i in range(10):
        buf.insert(make_transition(i))
    assert len(buf) == 4
    stored = sorted(t.action for t in buf.storage)
    assert stored == [6, 7, 8, 9]
