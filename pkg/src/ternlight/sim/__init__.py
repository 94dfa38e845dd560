"""Deterministic seeded smart-home environment: zones, stochastic occupants,
daylight/circadian models, energy accounting, and the rule-based baseline."""

from .actions import (
    BRIGHTNESS_LEVELS,
    CCT_BINS,
    LightAction,
    action_count,
    action_to_index,
    index_to_action,
    nearest_cct_bin,
)
from .config import ConfigError, HomeConfig, ScheduleBand, ZoneConfig
from .daylight import MAX_LUX, ambient_light, sunrise_sunset, target_cct
from .environment import (
    HomeSimulator,
    StepEvents,
    energy_of,
    episode_energy,
    rule_based_controller,
)
from .serialize import (
    action_to_doc,
    events_to_doc,
    state_from_doc,
    state_to_doc,
    trace_record,
)
from .state import HomeState

__all__ = [
    "BRIGHTNESS_LEVELS",
    "CCT_BINS",
    "LightAction",
    "action_count",
    "action_to_index",
    "index_to_action",
    "nearest_cct_bin",
    "ConfigError",
    "HomeConfig",
    "ScheduleBand",
    "ZoneConfig",
    "MAX_LUX",
    "ambient_light",
    "sunrise_sunset",
    "target_cct",
    "HomeSimulator",
    "StepEvents",
    "energy_of",
    "episode_energy",
    "rule_based_controller",
    "HomeState",
    "state_to_doc",
    "state_from_doc",
    "action_to_doc",
    "events_to_doc",
    "trace_record",
]
