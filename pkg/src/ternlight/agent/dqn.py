"""DQN agent: epsilon-greedy control, Bellman targets against a periodically
synced target network, IS-weighted Huber loss, and prioritized replay.

Everything is driven by numpy generators spawned from one seed, so a full
training run is reproducible bit-for-bit given (seed, config, environment).
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from ..ternary import Adam
from .qnetwork import build_qnetwork
from .replay import PrioritizedReplay, Transition

__all__ = ["AgentConfig", "EpisodeMetrics", "DQNAgent", "td_target", "train", "write_metrics_csv"]


@dataclass
class AgentConfig:
    discount: float = 0.97
    epsilon_start: float = 1.0
    epsilon_end: float = 0.05
    epsilon_decay_steps: int = 20_000
    learning_rate: float = 1e-3
    batch_size: int = 64
    target_sync: int = 500
    per_alpha: float = 0.6
    per_beta_start: float = 0.4
    per_beta_end: float = 1.0
    per_beta_steps: int = 20_000
    priority_epsilon: float = 1e-3
    replay_capacity: int = 100_000
    warmup: int = 1000
    hidden: int = 128
    seed: int = 0
    # decouple argmax (online) from evaluation (target) in the bootstrap;
    # plain max over a 221-action head overestimates badly enough under
    # quantization noise that the greedy policy never becomes frugal
    double_dqn: bool = True

    def __post_init__(self):
        if not 0.0 <= self.discount < 1.0:
            raise ValueError("discount must be in [0, 1)")
        if not 0.0 <= self.epsilon_end <= self.epsilon_start <= 1.0:
            raise ValueError("epsilon schedule must satisfy 0 <= end <= start <= 1")
        if not 0.0 <= self.per_alpha <= 1.0:
            raise ValueError("per_alpha must be in [0, 1]")
        if not 0.0 <= self.per_beta_start <= self.per_beta_end <= 1.0:
            raise ValueError("per_beta anneal must stay in [0, 1]")
        if self.batch_size < 1 or self.replay_capacity < self.batch_size:
            raise ValueError("need replay_capacity >= batch_size >= 1")


@dataclass
class EpisodeMetrics:
    episode: int
    total_reward: float
    energy_kwh: float
    comfort_mean: float
    overrides: int
    epsilon: float


def td_target(
    rewards: np.ndarray,
    next_q_max: np.ndarray,
    terminals: np.ndarray,
    discount: float,
) -> np.ndarray:
    """y = r + discount * max_a' Q_target(s', a'), with y = r at terminals."""
    rewards = np.asarray(rewards, dtype=np.float64)
    next_q_max = np.asarray(next_q_max, dtype=np.float64)
    terminals = np.asarray(terminals, dtype=bool)
    return rewards + discount * np.where(terminals, 0.0, next_q_max)


def _huber(delta: np.ndarray) -> np.ndarray:
    a = np.abs(delta)
    return np.where(a <= 1.0, 0.5 * delta * delta, a - 0.5)


class DQNAgent:
    def __init__(self, obs_dim: int, n_actions: int, config: AgentConfig | None = None):
        self.config = config or AgentConfig()
        cfg = self.config
        init_ss, action_ss, replay_ss = np.random.SeedSequence(cfg.seed).spawn(3)
        self.rng_action = np.random.default_rng(action_ss)
        self.rng_replay = np.random.default_rng(replay_ss)
        self.obs_dim = obs_dim
        self.n_actions = n_actions
        self.online = build_qnetwork(obs_dim, n_actions, np.random.default_rng(init_ss), cfg.hidden)
        self.target = self.online.clone()
        self.optimizer = Adam(self.online.param_arrays(), lr=cfg.learning_rate)
        self.replay = PrioritizedReplay(
            cfg.replay_capacity,
            per_alpha=cfg.per_alpha,
            per_beta=cfg.per_beta_start,
            priority_epsilon=cfg.priority_epsilon,
        )
        self.total_steps = 0
        self.updates = 0

    def epsilon_at(self, step: int) -> float:
        cfg = self.config
        frac = min(1.0, step / max(1, cfg.epsilon_decay_steps))
        return cfg.epsilon_start + frac * (cfg.epsilon_end - cfg.epsilon_start)

    def beta_at(self, step: int) -> float:
        cfg = self.config
        frac = min(1.0, step / max(1, cfg.per_beta_steps))
        return cfg.per_beta_start + frac * (cfg.per_beta_end - cfg.per_beta_start)

    def q_values(self, encoded: np.ndarray) -> np.ndarray:
        return self.online.forward(encoded[None, :].astype(np.float32))[0]

    def select_action(self, encoded: np.ndarray, epsilon: float) -> int:
        if not 0.0 <= epsilon <= 1.0:
            raise ValueError("epsilon must be in [0, 1]")
        if epsilon > 0 and self.rng_action.random() < epsilon:
            return int(self.rng_action.integers(0, self.n_actions))
        # argmax breaks ties toward the lowest index
        return int(np.argmax(self.q_values(encoded)))

    def greedy_action(self, encoded: np.ndarray) -> int:
        return int(np.argmax(self.q_values(encoded)))

    def observe(self, transition: Transition) -> None:
        self.replay.insert(transition)

    def train_step(self) -> float:
        cfg = self.config
        self.replay.per_beta = self.beta_at(self.total_steps)
        batch, indices, weights = self.replay.sample(cfg.batch_size, self.rng_replay)

        states = np.stack([t.state for t in batch]).astype(np.float32)
        next_states = np.stack([t.next_state for t in batch]).astype(np.float32)
        actions = np.array([t.action for t in batch], dtype=np.int64)
        rewards = np.array([t.reward.total for t in batch], dtype=np.float64)
        terminals = np.array([t.terminal for t in batch], dtype=bool)

        next_q = self.target.forward(next_states)
        if cfg.double_dqn:
            chosen = np.argmax(self.online.forward(next_states), axis=1)
            bootstrap = next_q[np.arange(len(batch)), chosen]
        else:
            bootstrap = next_q.max(axis=1)
        targets = td_target(rewards, bootstrap, terminals, cfg.discount)

        q_all, cache = self.online.forward_cached(states)
        rows = np.arange(len(batch))
        q_sa = q_all[rows, actions].astype(np.float64)
        td_errors = targets - q_sa

        loss = float(np.mean(weights * _huber(td_errors)))
        if not np.isfinite(loss):
            raise RuntimeError(
                f"non-finite loss at update {self.updates}: "
                f"targets range [{targets.min()}, {targets.max()}]"
            )

        # d(huber)/d(q_sa) = -clip(td, -1, 1), IS-weighted, averaged over batch
        dq = np.zeros_like(q_all)
        dq[rows, actions] = (-np.clip(td_errors, -1.0, 1.0) * weights / len(batch)).astype(
            q_all.dtype
        )
        grads = self.online.backward(cache, dq)
        self.optimizer.step(self.online.grad_arrays(grads))
        self.online.invalidate()

        self.replay.update_priorities(indices, td_errors)
        self.updates += 1
        if self.updates % cfg.target_sync == 0:
            self.target.copy_params_from(self.online)
        return loss

    def snapshot(self):
        """Immutable copy of the online network for concurrent readers."""
        return self.online.clone()


def train(agent: DQNAgent, env, episodes: int) -> list[EpisodeMetrics]:
    cfg = agent.config
    metrics: list[EpisodeMetrics] = []
    for episode in range(episodes):
        enc = env.reset()
        total_reward = 0.0
        watts_sum = 0.0
        comfort: list[float] = []
        overrides = 0
        epsilon = agent.epsilon_at(agent.total_steps)
        for t in range(env.episode_steps):
            epsilon = agent.epsilon_at(agent.total_steps)
            action = agent.select_action(enc, epsilon)
            next_enc, breakdown, env_terminal, info = env.step(action)
            # episode windows over the continuing home process are
            # truncations, not terminals: only the env can end the MDP
            override = bool(info.get("override", False))
            agent.observe(
                Transition(enc, action, breakdown, next_enc, env_terminal, override)
            )
            agent.total_steps += 1
            if len(agent.replay) >= cfg.warmup:
                agent.train_step()

            total_reward += breakdown.total
            watts_sum += info.get("watts", 0.0)
            if info.get("occupied", False):
                comfort.append(breakdown.comfort_pre_penalty(override))
            overrides += int(override)
            enc = next_enc
            if env_terminal:
                break
        metrics.append(
            EpisodeMetrics(
                episode=episode,
                total_reward=total_reward,
                energy_kwh=watts_sum * env.step_hours / 1000.0,
                comfort_mean=float(np.mean(comfort)) if comfort else 0.0,
                overrides=overrides,
                epsilon=epsilon,
            )
        )
    return metrics


def write_metrics_csv(path, metrics: list[EpisodeMetrics]) -> None:
    with open(path, "w", newline="") as fp:
        writer = csv.writer(fp)
        writer.writerow(["episode", "total_reward", "energy_kwh", "comfort_mean", "overrides", "epsilon"])
        for m in metrics:
            writer.writerow(
                [m.episode, m.total_reward, m.energy_kwh, m.comfort_mean, m.overrides, m.epsilon]
            )
