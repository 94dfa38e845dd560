"""Seeded smart-home simulator and the rule-based baseline controller.

The simulator owns three independent RNG streams (occupants, weather,
overrides) spawned from one seed. Occupant and weather draws never depend
on the controller's actions, so two controllers evaluated with the same
seed see byte-identical occupancy and weather traces.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .actions import CCT_BINS, LightAction, action_count, index_to_action
from .config import HomeConfig
from .daylight import ambient_light
from .state import HomeState

__all__ = [
    "StepEvents",
    "HomeSimulator",
    "energy_of",
    "episode_energy",
    "rule_based_controller",
]

AWAY = 0  # location index 0; zone z is location z + 1

RULE_CCT = 4600


@dataclass(frozen=True)
class StepEvents:
    """What happened during one step besides the agent's own action."""

    override: tuple[int, int] | None = None
    arrivals: tuple[int, ...] = ()
    departures: tuple[int, ...] = ()

    @property
    def override_occurred(self) -> bool:
        return self.override is not None


class HomeSimulator:
    """Deterministic seeded environment; one instance per evaluation run."""

    def __init__(self, cfg: HomeConfig, seed: int):
        self.cfg = cfg
        self.seed = seed
        occ_ss, weather_ss, override_ss = np.random.SeedSequence(seed).spawn(3)
        self._rng_occ = np.random.default_rng(occ_ss)
        self._rng_weather = np.random.default_rng(weather_ss)
        self._rng_override = np.random.default_rng(override_ss)
        self._locations = np.zeros(cfg.occupants, dtype=np.int64)  # all start away

    def reset(self) -> HomeState:
        cfg = self.cfg
        self._locations = np.zeros(cfg.occupants, dtype=np.int64)
        weather = cfg.weather_start
        minute = cfg.start_minute
        return HomeState(
            occupancy=self._occupancy_bits(),
            minute_of_day=minute,
            day_of_week=cfg.start_day_of_week,
            day_of_year=cfg.start_day_of_year,
            ambient_lux=ambient_light(minute, cfg.start_day_of_year, weather),
            weather_factor=weather,
            brightness=(0,) * cfg.n_zones,
            cct=(CCT_BINS[0],) * cfg.n_zones,
            activity=1 if (minute // 60) in cfg.activity_hours else 0,
        )

    def _occupancy_bits(self) -> tuple[int, ...]:
        bits = [0] * self.cfg.n_zones
        for loc in self._locations:
            if loc != AWAY:
                bits[loc - 1] = 1
        return tuple(bits)

    def step(self, state: HomeState, action: LightAction | None) -> tuple[HomeState, StepEvents]:
        cfg = self.cfg
        brightness = list(state.brightness)
        cct = list(state.cct)
        if action is not None:
            if not 0 <= action.zone < cfg.n_zones:
                raise ValueError(f"action zone {action.zone} out of range")
            brightness[action.zone] = action.brightness
            cct[action.zone] = action.cct

        minute = state.minute_of_day + cfg.step_minutes
        dow, doy = state.day_of_week, state.day_of_year
        if minute >= 1440:
            minute -= 1440
            dow = (dow + 1) % 7
            doy = (doy + 1) % 366

        matrix = cfg.matrix_for_hour(minute // 60)
        cum = np.cumsum(matrix, axis=1)
        draws = self._rng_occ.random(cfg.occupants)
        for i in range(cfg.occupants):
            self._locations[i] = int(np.searchsorted(cum[self._locations[i]], draws[i], side="right"))
            self._locations[i] = min(self._locations[i], cfg.n_zones)
        occupancy = self._occupancy_bits()

        arrivals = tuple(
            z for z in range(cfg.n_zones) if occupancy[z] and not state.occupancy[z]
        )
        departures = tuple(
            z for z in range(cfg.n_zones) if state.occupancy[z] and not occupancy[z]
        )

        weather = state.weather_factor
        if cfg.weather_kind == "random_walk":
            weather = float(np.clip(weather + self._rng_weather.normal(0.0, cfg.weather_sigma), 0.0, 1.0))

        activity = 1 if (minute // 60) in cfg.activity_hours else 0

        override = None
        for z in range(cfg.n_zones):
            if not occupancy[z]:
                continue
            preferred = cfg.zones[z].preferred(bool(activity))
            if abs(brightness[z] - preferred) > cfg.override_threshold:
                if self._rng_override.random() < cfg.override_probability:
                    brightness[z] = preferred
                    override = (z, preferred)
                    break

        next_state = HomeState(
            occupancy=occupancy,
            minute_of_day=minute,
            day_of_week=dow,
            day_of_year=doy,
            ambient_lux=ambient_light(minute, doy, weather),
            weather_factor=weather,
            brightness=tuple(brightness),
            cct=tuple(cct),
            activity=activity,
        )
        return next_state, StepEvents(override=override, arrivals=arrivals, departures=departures)

    def step_index(self, state: HomeState, action_index: int) -> tuple[HomeState, StepEvents]:
        return self.step(state, index_to_action(action_index, self.cfg.n_zones))

    @property
    def n_actions(self) -> int:
        return action_count(self.cfg.n_zones)


def energy_of(state: HomeState, cfg: HomeConfig) -> float:
    """Instantaneous lighting power draw in watts."""
    return sum(z.max_watts * b / 100.0 for z, b in zip(cfg.zones, state.brightness))


def episode_energy(states, cfg: HomeConfig) -> float:
    """kWh integrated over per-step states at the config's step length."""
    hours_per_step = cfg.step_minutes / 60.0
    return sum(energy_of(s, cfg) for s in states) * hours_per_step / 1000.0


def rule_based_controller(state: HomeState, cfg: HomeConfig) -> LightAction | None:
    """Occupancy-following baseline: occupied zones to 100% at 4600K,
    unoccupied zones off; one zone fixed per step, lowest index first."""
    for z in range(cfg.n_zones):
        if state.occupancy[z] and state.brightness[z] != 100:
            return LightAction(zone=z, brightness=100, cct=RULE_CCT)
    for z in range(cfg.n_zones):
        if not state.occupancy[z] and state.brightness[z] != 0:
            return LightAction(zone=z, brightness=0, cct=state.cct[z])
    return None
