"""Home configuration: zones, occupant schedule, override behavior, scenes.

Configs load from a JSON document. Occupant movement is a Markov chain over
locations [away, zone 0, ..., zone n-1], with one transition matrix per
hour band; each occupant follows the chain independently.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .actions import BRIGHTNESS_LEVELS, CCT_BINS

__all__ = ["ConfigError", "ZoneConfig", "ScheduleBand", "HomeConfig"]

ROW_SUM_TOL = 1e-9


class ConfigError(ValueError):
    """Malformed or inconsistent home configuration."""


@dataclass(frozen=True)
class ZoneConfig:
    name: str
    max_watts: float
    preferred_idle: int
    preferred_active: int
    synonyms: tuple[str, ...] = ()

    def preferred(self, active: bool) -> int:
        return self.preferred_active if active else self.preferred_idle


@dataclass(frozen=True)
class ScheduleBand:
    """Transition matrix in force for hours start <= h < end."""

    start_hour: int
    end_hour: int
    matrix: np.ndarray


@dataclass
class HomeConfig:
    zones: list[ZoneConfig]
    occupants: int = 2
    step_minutes: int = 5
    episode_steps: int = 288
    override_threshold: int = 30
    override_probability: float = 0.5
    activity_hours: tuple[int, ...] = (7, 8, 18, 19, 20, 21)
    weather_kind: str = "fixed"
    weather_start: float = 1.0
    weather_sigma: float = 0.02
    start_minute: int = 0
    start_day_of_week: int = 0
    start_day_of_year: int = 100
    schedule: list[ScheduleBand] = field(default_factory=list)
    scenes: dict[str, dict[str, dict]] = field(default_factory=dict)

    def __post_init__(self):
        if not self.zones:
            raise ConfigError("home needs at least one zone")
        for z in self.zones:
            if z.max_watts <= 0:
                raise ConfigError(f"zone {z.name!r}: max_watts must be positive")
            for p in (z.preferred_idle, z.preferred_active):
                if p not in BRIGHTNESS_LEVELS:
                    raise ConfigError(f"zone {z.name!r}: preferred brightness {p} not on the 10% grid")
        if self.occupants < 1:
            raise ConfigError("need at least one occupant")
        if not self.schedule:
            self.schedule = [ScheduleBand(0, 24, _uniform_matrix(self.n_zones))]
        for band in self.schedule:
            self._check_matrix(band)
        covered = set()
        for band in self.schedule:
            covered.update(range(band.start_hour, band.end_hour))
        if covered != set(range(24)):
            raise ConfigError("schedule bands must cover hours 0..23 exactly once")
        for name, scene in self.scenes.items():
            for zone_name, setting in scene.items():
                if self.zone_index(zone_name) is None:
                    raise ConfigError(f"scene {name!r} references unknown zone {zone_name!r}")
                if setting.get("brightness") not in BRIGHTNESS_LEVELS:
                    raise ConfigError(f"scene {name!r}/{zone_name!r}: bad brightness")
                if setting.get("cct") not in CCT_BINS:
                    raise ConfigError(f"scene {name!r}/{zone_name!r}: bad cct")

    def _check_matrix(self, band: ScheduleBand) -> None:
        m = band.matrix
        want = self.n_zones + 1
        if m.shape != (want, want):
            raise ConfigError(f"schedule matrix must be {want}x{want} (away + zones), got {m.shape}")
        if (m < 0).any():
            raise ConfigError("schedule matrix has negative probabilities")
        sums = m.sum(axis=1)
        if np.abs(sums - 1.0).max() > ROW_SUM_TOL:
            raise ConfigError(f"schedule matrix rows must sum to 1, got sums {sums}")

    @property
    def n_zones(self) -> int:
        return len(self.zones)

    def zone_index(self, name: str) -> int | None:
        name = name.lower()
        for i, z in enumerate(self.zones):
            if z.name.lower() == name:
                return i
        return None

    def matrix_for_hour(self, hour: int) -> np.ndarray:
        for band in self.schedule:
            if band.start_hour <= hour < band.end_hour:
                return band.matrix
        raise ConfigError(f"no schedule band covers hour {hour}")

    @classmethod
    def from_dict(cls, doc: dict) -> "HomeConfig":
        try:
            zones = [
                ZoneConfig(
                    name=z["name"],
                    max_watts=float(z["max_watts"]),
                    preferred_idle=int(z["preferred"]["idle"]),
                    preferred_active=int(z["preferred"]["active"]),
                    synonyms=tuple(z.get("synonyms", ())),
                )
                for z in doc["zones"]
            ]
        except (KeyError, TypeError) as exc:
            raise ConfigError(f"bad zone definition: {exc}") from exc
        schedule = [
            ScheduleBand(
                start_hour=int(b["hours"][0]),
                end_hour=int(b["hours"][1]),
                matrix=np.asarray(b["matrix"], dtype=np.float64),
            )
            for b in doc.get("schedule", [])
        ]
        weather = doc.get("weather", {})
        start = doc.get("start", {})
        return cls(
            zones=zones,
            occupants=int(doc.get("occupants", 2)),
            step_minutes=int(doc.get("step_minutes", 5)),
            episode_steps=int(doc.get("episode_steps", 288)),
            override_threshold=int(doc.get("override_threshold", 30)),
            override_probability=float(doc.get("override_probability", 0.5)),
            activity_hours=tuple(doc.get("activity_hours", (7, 8, 18, 19, 20, 21))),
            weather_kind=weather.get("kind", "fixed"),
            weather_start=float(weather.get("start", 1.0)),
            weather_sigma=float(weather.get("sigma", 0.02)),
            start_minute=int(start.get("minute_of_day", 0)),
            start_day_of_week=int(start.get("day_of_week", 0)),
            start_day_of_year=int(start.get("day_of_year", 100)),
            schedule=schedule,
            scenes=doc.get("scenes", {}),
        )

    @classmethod
    def from_json(cls, path) -> "HomeConfig":
        path = Path(path)
        try:
            doc = json.loads(path.read_text())
        except FileNotFoundError:
            raise ConfigError(f"home config not found: {path}") from None
        except json.JSONDecodeError as exc:
            raise ConfigError(f"home config {path} is not valid JSON: {exc}") from exc
        return cls.from_dict(doc)


def _uniform_matrix(n_zones: int) -> np.ndarray:
    size = n_zones + 1
    return np.full((size, size), 1.0 / size)
