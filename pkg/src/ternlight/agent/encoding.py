"""State featurization for the Q-network.

Layout, in order: occupancy bits (n), sin/cos of minute-of-day, sin/cos of
day-of-week, sin/cos of day-of-year, ambient lux / 100000, weather factor,
per-zone brightness / 100, per-zone (cct - 2700) / 3800, activity flag.
Dimension: 3n + 9.
"""

from __future__ import annotations

import math

import numpy as np

from ..sim import HomeConfig, HomeState

__all__ = ["state_dim", "encode_state"]


def state_dim(n_zones: int) -> int:
    return 3 * n_zones + 9


def encode_state(state: HomeState, cfg: HomeConfig) -> np.ndarray:
    n = cfg.n_zones
    if state.n_zones != n:
        raise ValueError(f"state has {state.n_zones} zones, config has {n}")
    out = np.empty(state_dim(n), dtype=np.float32)
    out[:n] = state.occupancy
    minute_phase = 2 * math.pi * state.minute_of_day / 1440.0
    dow_phase = 2 * math.pi * state.day_of_week / 7.0
    doy_phase = 2 * math.pi * state.day_of_year / 366.0
    out[n] = math.sin(minute_phase)
    out[n + 1] = math.cos(minute_phase)
    out[n + 2] = math.sin(dow_phase)
    out[n + 3] = math.cos(dow_phase)
    out[n + 4] = math.sin(doy_phase)
    out[n + 5] = math.cos(doy_phase)
    out[n + 6] = state.ambient_lux / 100_000.0
    out[n + 7] = state.weather_factor
    out[n + 8 : 2 * n + 8] = [b / 100.0 for b in state.brightness]
    out[2 * n + 8 : 3 * n + 8] = [(c - 2700) / 3800.0 for c in state.cct]
    out[3 * n + 8] = state.activity
    return out
