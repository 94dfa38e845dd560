"""Discrete lighting actions and the flat action-index bijection.

An action either targets one zone with (brightness level, color-temperature
bin) or is a no-op, represented as None. Index 0 is the no-op; the remaining
n * 11 * 5 indices enumerate (zone, level, bin) row-major.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = [
    "LightAction",
    "CCT_BINS",
    "BRIGHTNESS_LEVELS",
    "action_count",
    "action_to_index",
    "index_to_action",
    "nearest_cct_bin",
]

CCT_BINS = (2700, 3650, 4600, 5550, 6500)
BRIGHTNESS_LEVELS = tuple(range(0, 101, 10))


@dataclass(frozen=True)
class LightAction:
    zone: int
    brightness: int
    cct: int

    def __post_init__(self):
        if self.brightness not in BRIGHTNESS_LEVELS:
            raise ValueError(f"brightness {self.brightness} not a multiple of 10 in 0..100")
        if self.cct not in CCT_BINS:
            raise ValueError(f"cct {self.cct} is not one of the bins {CCT_BINS}")


def action_count(n_zones: int) -> int:
    return n_zones * len(BRIGHTNESS_LEVELS) * len(CCT_BINS) + 1


def action_to_index(action: LightAction | None, n_zones: int) -> int:
    if action is None:
        return 0
    if not 0 <= action.zone < n_zones:
        raise ValueError(f"zone {action.zone} out of range for {n_zones} zones")
    level = action.brightness // 10
    bin_idx = CCT_BINS.index(action.cct)
    return 1 + (action.zone * len(BRIGHTNESS_LEVELS) + level) * len(CCT_BINS) + bin_idx


def index_to_action(index: int, n_zones: int) -> LightAction | None:
    if not 0 <= index < action_count(n_zones):
        raise ValueError(f"action index {index} out of range for {n_zones} zones")
    if index == 0:
        return None
    i = index - 1
    bin_idx = i % len(CCT_BINS)
    i //= len(CCT_BINS)
    level = i % len(BRIGHTNESS_LEVELS)
    zone = i // len(BRIGHTNESS_LEVELS)
    return LightAction(zone=zone, brightness=level * 10, cct=CCT_BINS[bin_idx])


def nearest_cct_bin(kelvin: float) -> int:
    """Snap a kelvin value to the nearest bin center (lower bin wins ties)."""
    best = CCT_BINS[0]
    for bin_k in CCT_BINS[1:]:
        if abs(bin_k - kelvin) < abs(best - kelvin):
            best = bin_k
    return best
