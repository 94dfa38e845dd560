"""Ambient daylight and circadian color-temperature models.

Daylight is a half-sine between sunrise and sunset, scaled by a weather
factor, peaking at 100k lux at solar noon. Sunrise/sunset swing +/-2h
around 06:00/18:00 over the year (day 80 ~ the spring equinox).

The circadian target is piecewise linear: warm 2700K overnight, ramping to
6500K between 06:00 and 12:00, holding until 14:00, and ramping back down
by 20:00.
"""

from __future__ import annotations

import math

__all__ = ["ambient_light", "target_cct", "sunrise_sunset", "MAX_LUX"]

MAX_LUX = 100_000.0
_SEASON_SWING_MIN = 120.0


def sunrise_sunset(day_of_year: int) -> tuple[float, float]:
    shift = _SEASON_SWING_MIN * math.sin(2 * math.pi * (day_of_year - 80) / 365.25)
    return 360.0 - shift, 1080.0 + shift


def ambient_light(minute_of_day: int, day_of_year: int, weather_factor: float) -> float:
    """Outdoor illuminance in lux, in [0, 100000]."""
    sunrise, sunset = sunrise_sunset(day_of_year)
    if minute_of_day <= sunrise or minute_of_day >= sunset:
        return 0.0
    phase = math.pi * (minute_of_day - sunrise) / (sunset - sunrise)
    return MAX_LUX * weather_factor * max(0.0, math.sin(phase))


def target_cct(minute_of_day: int) -> float:
    """Circadian color-temperature target in kelvin, in [2700, 6500]."""
    m = minute_of_day
    if m < 360 or m >= 1200:
        return 2700.0
    if m < 720:
        return 2700.0 + (m - 360) / 360.0 * 3800.0
    if m < 840:
        return 6500.0
    return 6500.0 - (m - 840) / 360.0 * 3800.0
