"""Observable environment state."""

from __future__ import annotations

from dataclasses import dataclass, replace

from .actions import BRIGHTNESS_LEVELS, CCT_BINS

__all__ = ["HomeState"]


@dataclass(frozen=True)
class HomeState:
    occupancy: tuple[int, ...]
    minute_of_day: int
    day_of_week: int
    day_of_year: int
    ambient_lux: float
    weather_factor: float
    brightness: tuple[int, ...]
    cct: tuple[int, ...]
    activity: int

    def __post_init__(self):
        n = len(self.occupancy)
        if len(self.brightness) != n or len(self.cct) != n:
            raise ValueError("occupancy, brightness and cct must have equal length")
        if any(o not in (0, 1) for o in self.occupancy):
            raise ValueError("occupancy bits must be 0 or 1")
        if not 0 <= self.minute_of_day < 1440:
            raise ValueError(f"minute_of_day {self.minute_of_day} out of range")
        if not 0 <= self.day_of_week < 7:
            raise ValueError(f"day_of_week {self.day_of_week} out of range")
        if not 0 <= self.day_of_year < 366:
            raise ValueError(f"day_of_year {self.day_of_year} out of range")
        if not 0.0 <= self.weather_factor <= 1.0:
            raise ValueError(f"weather_factor {self.weather_factor} out of range")
        if self.ambient_lux < 0:
            raise ValueError("ambient_lux must be non-negative")
        if any(b not in BRIGHTNESS_LEVELS for b in self.brightness):
            raise ValueError("brightness must be multiples of 10 in 0..100")
        if any(c not in CCT_BINS for c in self.cct):
            raise ValueError("cct values must be bin centers")
        if self.activity not in (0, 1):
            raise ValueError("activity flag must be 0 or 1")

    @property
    def n_zones(self) -> int:
        return len(self.occupancy)

    def with_lighting(self, zone: int, brightness: int, cct: int) -> "HomeState":
        b = list(self.brightness)
        c = list(self.cct)
        b[zone] = brightness
        c[zone] = cct
        return replace(self, brightness=tuple(b), cct=tuple(c))
