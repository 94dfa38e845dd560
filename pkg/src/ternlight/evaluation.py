"""Paired-seed controller evaluation.

Both controllers run against simulators constructed from the same seeds, so
they see byte-identical occupant and weather streams; differences in energy,
comfort, and overrides are attributable to policy alone. Comfort is reported
pre-penalty, averaged over steps with at least one occupied zone.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .agent import RewardWeights, compute_reward, encode_state
from .sim import (
    HomeConfig,
    HomeSimulator,
    energy_of,
    rule_based_controller,
    trace_record,
)

__all__ = ["ControllerReport", "run_controller", "evaluate_pair", "greedy_policy", "baseline_policy"]


@dataclass
class ControllerReport:
    episodes: int
    energy_kwh_per_day: float
    comfort_mean: float
    overrides_per_day: float
    override_rate: float
    reward_mean: float

    def to_dict(self) -> dict:
        return asdict(self)


def greedy_policy(net, cfg: HomeConfig):
    """State -> action policy wrapping a Q-network snapshot."""
    from .sim import index_to_action

    def policy(state):
        q = net.forward(encode_state(state, cfg)[None, :])[0]
        return index_to_action(int(np.argmax(q)), cfg.n_zones)

    return policy


def baseline_policy(cfg: HomeConfig):
    def policy(state):
        return rule_based_controller(state, cfg)

    return policy


def run_controller(
    policy,
    cfg: HomeConfig,
    weights: RewardWeights,
    seed: int,
    episodes: int,
    trace_path=None,
) -> ControllerReport:
    total_energy = 0.0
    comfort: list[float] = []
    overrides = 0
    steps = 0
    reward_sum = 0.0
    hours_per_step = cfg.step_minutes / 60.0
    trace_fp = open(trace_path, "w") if trace_path else None
    try:
        for ep in range(episodes):
            sim = HomeSimulator(cfg, seed + ep)
            state = sim.reset()
            for _ in range(cfg.episode_steps):
                action = policy(state)
                next_state, events = sim.step(state, action)
                breakdown = compute_reward(state, action, next_state, events, weights, cfg)
                total_energy += energy_of(next_state, cfg) * hours_per_step / 1000.0
                if any(next_state.occupancy):
                    comfort.append(breakdown.comfort_pre_penalty(events.override_occurred))
                overrides += int(events.override_occurred)
                reward_sum += breakdown.total
                if trace_fp is not None:
                    reward_doc = {
                        "r_energy": breakdown.r_energy,
                        "r_comfort": breakdown.r_comfort,
                        "r_circadian": breakdown.r_circadian,
                        "total": breakdown.total,
                    }
                    trace_fp.write(
                        trace_record(steps, next_state, action, reward_doc, events) + "\n"
                    )
                steps += 1
                state = next_state
    finally:
        if trace_fp is not None:
            trace_fp.close()
    return ControllerReport(
        episodes=episodes,
        energy_kwh_per_day=total_energy / episodes,
        comfort_mean=float(np.mean(comfort)) if comfort else 0.0,
        overrides_per_day=overrides / episodes,
        override_rate=overrides / steps if steps else 0.0,
        reward_mean=reward_sum / steps if steps else 0.0,
    )


def evaluate_pair(
    agent_policy,
    cfg: HomeConfig,
    weights: RewardWeights,
    seed: int,
    episodes: int,
    trace_path=None,
) -> dict:
    """Agent vs rule-based baseline on identical seeds."""
    agent_report = run_controller(
        agent_policy, cfg, weights, seed, episodes, trace_path=trace_path
    )
    base_report = run_controller(baseline_policy(cfg), cfg, weights, seed, episodes)
    savings = 1.0 - agent_report.energy_kwh_per_day / base_report.energy_kwh_per_day
    return {
        "agent": agent_report.to_dict(),
        "baseline": base_report.to_dict(),
        "energy_savings_fraction": savings,
        "comfort_delta": agent_report.comfort_mean - base_report.comfort_mean,
        "episodes": episodes,
        "seed": seed,
    }
