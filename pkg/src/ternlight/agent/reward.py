"""Multi-objective step reward: weighted energy, comfort, and circadian terms.

    total = w_energy * r_energy + w_comfort * r_comfort + w_circadian * r_circadian

r_energy is the negated fraction of installed lighting power in use, in
[-1, 0]. r_comfort averages 1 - |brightness - preferred|/100 over occupied
zones (0 when none are occupied) and drops by 1 when the occupant manually
overrode the controller this step. r_circadian averages
1 - |cct - target|/3800 over occupied lit zones, in [0, 1].
"""

from __future__ import annotations

from dataclasses import dataclass

from ..sim import HomeConfig, HomeState, LightAction, StepEvents, target_cct

__all__ = ["RewardWeights", "RewardBreakdown", "compute_reward", "OVERRIDE_PENALTY"]

OVERRIDE_PENALTY = 1.0


@dataclass(frozen=True)
class RewardWeights:
    w_energy: float = 1.0
    w_comfort: float = 1.0
    w_circadian: float = 0.5

    def __post_init__(self):
        if self.w_energy < 0 or self.w_comfort < 0 or self.w_circadian < 0:
            raise ValueError("reward weights must be non-negative")
        if self.w_energy == self.w_comfort == self.w_circadian == 0:
            raise ValueError("at least one reward weight must be positive")


@dataclass(frozen=True)
class RewardBreakdown:
    r_energy: float
    r_comfort: float
    r_circadian: float
    total: float

    def comfort_pre_penalty(self, override: bool) -> float:
        """The comfort term before the override penalty, if one was applied."""
        return self.r_comfort + OVERRIDE_PENALTY if override else self.r_comfort


def compute_reward(
    state: HomeState,
    action: LightAction | None,
    next_state: HomeState,
    events: StepEvents | None,
    weights: RewardWeights,
    cfg: HomeConfig,
) -> RewardBreakdown:
    total_watts = sum(z.max_watts for z in cfg.zones)
    used_watts = sum(
        z.max_watts * b / 100.0 for z, b in zip(cfg.zones, next_state.brightness)
    )
    r_energy = -used_watts / total_watts

    occupied = [z for z in range(cfg.n_zones) if next_state.occupancy[z]]
    if occupied:
        active = bool(next_state.activity)
        r_comfort = sum(
            1.0 - abs(next_state.brightness[z] - cfg.zones[z].preferred(active)) / 100.0
            for z in occupied
        ) / len(occupied)
    else:
        r_comfort = 0.0
    if events is not None and events.override_occurred:
        r_comfort -= OVERRIDE_PENALTY

    lit = [z for z in occupied if next_state.brightness[z] > 0]
    if lit:
        target = target_cct(next_state.minute_of_day)
        r_circadian = sum(
            1.0 - abs(next_state.cct[z] - target) / 3800.0 for z in lit
        ) / len(lit)
    else:
        r_circadian = 0.0

    total = (
        weights.w_energy * r_energy
        + weights.w_comfort * r_comfort
        + weights.w_circadian * r_circadian
    )
    return RewardBreakdown(r_energy, r_comfort, r_circadian, total)
