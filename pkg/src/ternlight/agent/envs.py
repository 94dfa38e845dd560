"""Environment adapter between the home simulator and the DQN training loop.

The loop only needs: reset() -> encoded state, step(action_index) ->
(encoded next state, reward breakdown, terminal, info), plus n_actions,
episode_steps, and step_hours. info carries {"occupied", "watts",
"override"} so episode metrics stay environment-agnostic.
"""

from __future__ import annotations

import numpy as np

from ..sim import HomeConfig, HomeSimulator, energy_of, index_to_action
from .encoding import encode_state, state_dim
from .reward import RewardWeights, compute_reward

__all__ = ["LightingEnv"]


class LightingEnv:
    def __init__(
        self,
        cfg: HomeConfig,
        weights: RewardWeights,
        seed: int,
        exploring_starts: bool = False,
    ):
        self.cfg = cfg
        self.weights = weights
        self.sim = HomeSimulator(cfg, seed)
        self.state = None
        # epsilon-greedy over a couple hundred actions revisits frugal
        # (mostly-dark) configurations too rarely to value them; randomized
        # initial lighting restores coverage during training
        self.exploring_starts = exploring_starts
        # distinct spawn key: must not alias the simulator's own streams
        self._start_rng = np.random.default_rng(
            np.random.SeedSequence(entropy=seed, spawn_key=(17,))
        )

    @property
    def n_actions(self) -> int:
        return self.sim.n_actions

    @property
    def obs_dim(self) -> int:
        return state_dim(self.cfg.n_zones)

    @property
    def episode_steps(self) -> int:
        return self.cfg.episode_steps

    @property
    def step_hours(self) -> float:
        return self.cfg.step_minutes / 60.0

    def reset(self) -> np.ndarray:
        self.state = self.sim.reset()
        if self.exploring_starts:
            rng = self._start_rng
            from dataclasses import replace

            from ..sim import BRIGHTNESS_LEVELS, CCT_BINS

            kind = rng.integers(0, 3)
            n = self.cfg.n_zones
            if kind == 1:
                brightness = tuple(
                    int(BRIGHTNESS_LEVELS[i]) for i in rng.integers(0, 11, size=n)
                )
                cct = tuple(int(CCT_BINS[i]) for i in rng.integers(0, 5, size=n))
                self.state = replace(self.state, brightness=brightness, cct=cct)
            elif kind == 2:
                active = bool(self.state.activity)
                brightness = tuple(z.preferred(active) for z in self.cfg.zones)
                self.state = replace(self.state, brightness=brightness)
        return encode_state(self.state, self.cfg)

    def step(self, action_index: int):
        action = index_to_action(action_index, self.cfg.n_zones)
        next_state, events = self.sim.step(self.state, action)
        breakdown = compute_reward(
            self.state, action, next_state, events, self.weights, self.cfg
        )
        info = {
            "occupied": any(next_state.occupancy),
            "watts": energy_of(next_state, self.cfg),
            "override": events.override_occurred,
            "state": next_state,
            "events": events,
        }
        self.state = next_state
        return encode_state(next_state, self.cfg), breakdown, False, info
