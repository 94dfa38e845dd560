import pytest

from ternlight.intent import (
    ActivateScene,
    MappingError,
    QueryState,
    SetBrightness,
    SetColorTemp,
    TurnOff,
    TurnOn,
    intent_to_config,
)
from ternlight.sim import HomeConfig, LightAction
from ternlight.sim.state import HomeState


@pytest.fixture
def cfg():
    return HomeConfig.from_json("configs/home_family4.json")


@pytest.fixture
def state(cfg):
    return HomeState(
        occupancy=(1, 0, 0, 1),
        minute_of_day=780,
        day_of_week=2,
        day_of_year=100,
        ambient_lux=50_000.0,
        weather_factor=0.9,
        brightness=(60, 0, 0, 80),
        cct=(4600, 2700, 2700, 5550),
        activity=0,
    )


def test_turn_off_all_fans_out(cfg, state):
    doc, actions = intent_to_config(TurnOff("all"), state, cfg)
    assert len(actions) == 4
    for z, a in enumerate(actions):
        assert a == LightAction(z, 0, state.cct[z])
    assert len(doc["settings"]) == 4


def test_set_brightness_single_zone(cfg, state):
    doc, actions = intent_to_config(SetBrightness("kitchen", 40), state, cfg)
    assert actions == [LightAction(1, 40, state.cct[1])]
    assert doc["settings"][0]["zone"] == "kitchen"


def test_turn_on_uses_preferred_and_circadian_bin(cfg, state):
    # 13:00 -> target 6500K; zone preferred depends on the activity flag
    doc, actions = intent_to_config(TurnOn("office"), state, cfg)
    assert actions == [LightAction(3, cfg.zones[3].preferred(False), 6500)]


def test_set_color_temp_keeps_brightness(cfg, state):
    _, actions = intent_to_config(SetColorTemp("living room", 2700), state, cfg)
    assert actions == [LightAction(0, 60, 2700)]


def test_scene_lookup(cfg, state):
    doc, actions = intent_to_config(ActivateScene("evening"), state, cfg)
    by_zone = {a.zone: a for a in actions}
    scene = cfg.scenes["evening"]
    for zone_name, setting in scene.items():
        z = cfg.zone_index(zone_name)
        assert by_zone[z].brightness == setting["brightness"]
        assert by_zone[z].cct == setting["cct"]


def test_unknown_scene(cfg, state):
    with pytest.raises(MappingError):
        intent_to_config(ActivateScene("disco"), state, cfg)


def test_unknown_zone(cfg, state):
    with pytest.raises(MappingError):
        intent_to_config(TurnOn("garage"), state, cfg)


def test_query_state_has_no_actions(cfg, state):
    doc, actions = intent_to_config(QueryState(None), state, cfg)
    assert actions == []
    assert len(doc["zones"]) == 4
    assert doc["zones"][0]["occupied"] is True
    doc_one, _ = intent_to_config(QueryState("kitchen"), state, cfg)
    assert len(doc_one["zones"]) == 1
