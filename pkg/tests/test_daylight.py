import math

import pytest

from ternlight.sim import ambient_light, sunrise_sunset, target_cct


def test_midnight_dark():
    for doy in (0, 80, 172, 355):
        assert ambient_light(0, doy, 1.0) == 0.0


def test_solar_noon_peak():
    # day 80: sunrise 06:00, sunset 18:00, solar noon 12:00
    sr, ss = sunrise_sunset(80)
    assert sr == pytest.approx(360.0)
    assert ss == pytest.approx(1080.0)
    assert ambient_light(720, 80, 1.0) == pytest.approx(100_000.0)


def test_weather_scales_multiplicatively():
    for minute in range(0, 1440, 45):
        clear = ambient_light(minute, 120, 1.0)
        half = ambient_light(minute, 120, 0.5)
        assert half == pytest.approx(0.5 * clear)


def test_seasonal_swing_bounded():
    for doy in range(0, 366, 7):
        sr, ss = sunrise_sunset(doy)
        assert 240 <= sr <= 480
        assert 960 <= ss <= 1200
        for minute in range(0, 1440, 30):
            lux = ambient_light(minute, doy, 1.0)
            assert 0.0 <= lux <= 100_000.0


def test_target_cct_flat_regions():
    assert target_cct(180) == 2700.0   # 03:00
    assert target_cct(780) == 6500.0   # 13:00
    assert target_cct(1260) == 2700.0  # 21:00


def test_target_cct_morning_midpoint():
    assert target_cct(540) == pytest.approx(4600.0)  # 09:00


def test_target_cct_continuous_piecewise():
    prev = target_cct(0)
    for m in range(1, 1440):
        cur = target_cct(m)
        assert 2700.0 <= cur <= 6500.0
        # largest slope is 3800K over 6h -> ~10.6K per minute
        assert abs(cur - prev) < 10.6
        prev = cur
