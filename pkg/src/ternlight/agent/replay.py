"""Prioritized experience replay (proportional variant) over a sum tree.

Priorities are p_i = (|td_error_i| + priority_epsilon) ** per_alpha, stored
at the leaves of a complete binary tree whose internal nodes hold partial
sums, giving O(log n) proportional sampling. New transitions enter at the
current maximum stored priority so they are replayed at least once.
Importance weights are w_i = (N * P(i)) ** -per_beta, normalized by the
maximum weight over the buffer (computed from the minimum stored priority),
so w_i <= 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .reward import RewardBreakdown

__all__ = ["Transition", "SumTree", "PrioritizedReplay"]


@dataclass
class Transition:
    state: np.ndarray
    action: int
    reward: RewardBreakdown
    next_state: np.ndarray
    terminal: bool
    override: bool = False


class SumTree:
    """Array-backed complete binary tree; leaf i sits at capacity - 1 + i."""

    def __init__(self, capacity: int):
        if capacity < 1:
            raise ValueError("capacity must be positive")
        self.capacity = capacity
        self.tree = np.zeros(2 * capacity - 1, dtype=np.float64)

    def update(self, leaf: int, value: float) -> None:
        idx = leaf + self.capacity - 1
        change = value - self.tree[idx]
        self.tree[idx] = value
        while idx != 0:
            idx = (idx - 1) // 2
            self.tree[idx] += change

    def leaf_value(self, leaf: int) -> float:
        return float(self.tree[leaf + self.capacity - 1])

    @property
    def total(self) -> float:
        return float(self.tree[0])

    def retrieve(self, value: float) -> int:
        """Leaf index whose cumulative-priority interval contains value."""
        idx = 0
        while True:
            left = 2 * idx + 1
            if left >= len(self.tree):
                return idx - (self.capacity - 1)
            if value <= self.tree[left]:
                idx = left
            else:
                value -= self.tree[left]
                idx = left + 1

    def leaf_values(self, n: int) -> np.ndarray:
        return self.tree[self.capacity - 1 : self.capacity - 1 + n].copy()


class PrioritizedReplay:
    def __init__(
        self,
        capacity: int,
        per_alpha: float = 0.6,
        per_beta: float = 0.4,
        priority_epsilon: float = 1e-3,
    ):
        if not 0.0 <= per_alpha <= 1.0:
            raise ValueError("per_alpha must be in [0, 1]")
        if not 0.0 <= per_beta <= 1.0:
            raise ValueError("per_beta must be in [0, 1]")
        if priority_epsilon <= 0:
            raise ValueError("priority_epsilon must be positive")
        self.capacity = capacity
        self.per_alpha = per_alpha
        self.per_beta = per_beta
        self.priority_epsilon = priority_epsilon
        self.tree = SumTree(capacity)
        self.storage: list[Transition | None] = [None] * capacity
        self.size = 0
        self._next = 0
        self._max_priority = 1.0

    def __len__(self) -> int:
        return self.size

    def insert(self, transition: Transition) -> None:
        self.storage[self._next] = transition
        self.tree.update(self._next, self._max_priority)
        self._next = (self._next + 1) % self.capacity
        self.size = min(self.size + 1, self.capacity)

    def sample(self, k: int, rng: np.random.Generator):
        """Returns (transitions, leaf indices, importance weights)."""
        if self.size == 0:
            raise ValueError("cannot sample from an empty replay buffer")
        if k > self.size:
            raise ValueError(f"cannot sample {k} from buffer of size {self.size}")
        total = self.tree.total
        draws = rng.random(k) * total
        indices = np.array([self.tree.retrieve(v) for v in draws], dtype=np.int64)
        priorities = np.array([self.tree.leaf_value(i) for i in indices])
        probs = priorities / total
        weights = (self.size * probs) ** -self.per_beta
        min_prob = self.tree.leaf_values(self.size).min() / total
        max_weight = (self.size * min_prob) ** -self.per_beta
        weights = weights / max_weight
        transitions = [self.storage[i] for i in indices]
        return transitions, indices, weights

    def update_priorities(self, indices, td_errors) -> None:
        for i, err in zip(indices, np.asarray(td_errors, dtype=np.float64)):
            p = (abs(float(err)) + self.priority_epsilon) ** self.per_alpha
            self.tree.update(int(i), p)
            self._max_priority = max(self._max_priority, p)
