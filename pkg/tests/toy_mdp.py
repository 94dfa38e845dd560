"""Small deterministic MDP for checking learned policies against exact
dynamic programming.

Two zones with distinct wattage, brightness restricted to {0, 60}, a fixed
13:00 clock with color temperature pinned to the circadian target, and
occupancy cycling deterministically (0,0) -> (1,0) -> (1,1) -> (0,1) ->
(0,0). Sixteen states (4 occupancy phases x 4 lighting configs), five
actions (no-op, or set one zone to 0 or 60). Rewards come from the standard
weighted reward on the post-transition state, so the optimal policy must
anticipate arrivals one step ahead.
"""

from __future__ import annotations

import numpy as np

from ternlight.agent import RewardWeights, compute_reward, encode_state
from ternlight.sim import HomeConfig, StepEvents, ZoneConfig
from ternlight.sim.state import HomeState

PHASES = ((0, 0), (1, 0), (1, 1), (0, 1))
LEVELS = (0, 60)
MINUTE = 780  # 13:00 -> target cct 6500
CCT = 6500

# action -> (zone, level) with None as no-op
ACTIONS = (None, (0, 0), (0, 60), (1, 0), (1, 60))


def toy_config() -> HomeConfig:
    return HomeConfig(
        zones=[ZoneConfig("zone a", 8.0, 60, 60), ZoneConfig("zone b", 16.0, 60, 60)],
        occupants=1,
        weather_kind="fixed",
        activity_hours=(),
        episode_steps=64,
    )


def make_state(phase: int, b0: int, b1: int) -> HomeState:
    return HomeState(
        occupancy=PHASES[phase],
        minute_of_day=MINUTE,
        day_of_week=0,
        day_of_year=172,
        ambient_lux=0.0,
        weather_factor=1.0,
        brightness=(b0, b1),
        cct=(CCT, CCT),
        activity=0,
    )


def enumerate_states():
    return [
        (phase, b0, b1)
        for phase in range(4)
        for b0 in LEVELS
        for b1 in LEVELS
    ]


def state_id(phase: int, b0: int, b1: int) -> int:
    return phase * 4 + LEVELS.index(b0) * 2 + LEVELS.index(b1)


def transition(phase: int, b0: int, b1: int, action: int):
    """Returns (next phase, next b0, next b1, reward breakdown)."""
    act = ACTIONS[action]
    nb0, nb1 = b0, b1
    if act is not None:
        zone, level = act
        if zone == 0:
            nb0 = level
        else:
            nb1 = level
    next_phase = (phase + 1) % 4
    s = make_state(phase, b0, b1)
    s2 = make_state(next_phase, nb0, nb1)
    breakdown = compute_reward(s, None, s2, StepEvents(), RewardWeights(), toy_config())
    return next_phase, nb0, nb1, breakdown


def value_iteration(discount: float = 0.97, tol: float = 1e-10):
    """Tabular oracle: returns (values, q_table, optimal action sets)."""
    states = enumerate_states()
    n, m = len(states), len(ACTIONS)
    succ = np.zeros((n, m), dtype=np.int64)
    rew = np.zeros((n, m), dtype=np.float64)
    for si, (phase, b0, b1) in enumerate(states):
        for a in range(m):
            np_, nb0, nb1, br = transition(phase, b0, b1, a)
            succ[si, a] = state_id(np_, nb0, nb1)
            rew[si, a] = br.total
    values = np.zeros(n)
    while True:
        q = rew + discount * values[succ]
        new_values = q.max(axis=1)
        if np.abs(new_values - values).max() < tol:
            values = new_values
            break
        values = new_values
    q = rew + discount * values[succ]
    optimal = [set(np.flatnonzero(q[s] >= q[s].max() - 1e-8)) for s in range(n)]
    return values, q, optimal


class ToyEnv:
    """Training adapter; resets sweep all 16 states for even coverage."""

    def __init__(self):
        self.cfg = toy_config()
        self._reset_counter = 0
        self.phase = 0
        self.b0 = 0
        self.b1 = 0

    @property
    def n_actions(self) -> int:
        return len(ACTIONS)

    @property
    def episode_steps(self) -> int:
        return self.cfg.episode_steps

    @property
    def step_hours(self) -> float:
        return self.cfg.step_minutes / 60.0

    def encode(self, phase: int, b0: int, b1: int) -> np.ndarray:
        return encode_state(make_state(phase, b0, b1), self.cfg)

    def reset(self) -> np.ndarray:
        states = enumerate_states()
        self.phase, self.b0, self.b1 = states[self._reset_counter % len(states)]
        self._reset_counter += 1
        return self.encode(self.phase, self.b0, self.b1)

    def step(self, action: int):
        self.phase, self.b0, self.b1, breakdown = transition(
            self.phase, self.b0, self.b1, action
        )
        enc = self.encode(self.phase, self.b0, self.b1)
        info = {
            "occupied": any(PHASES[self.phase]),
            "watts": 8.0 * self.b0 / 100.0 + 16.0 * self.b1 / 100.0,
            "override": False,
        }
        return enc, breakdown, False, info


def greedy_policy_matches(agent, env: ToyEnv, optimal) -> tuple[int, int]:
    """(matching states, total states) for the agent's greedy policy."""
    states = enumerate_states()
    hits = 0
    for phase, b0, b1 in states:
        a = agent.greedy_action(env.encode(phase, b0, b1))
        if a in optimal[state_id(phase, b0, b1)]:
            hits += 1
    return hits, len(states)
