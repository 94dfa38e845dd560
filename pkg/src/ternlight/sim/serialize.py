"""JSON documents for states, actions, events, and trajectory records."""

from __future__ import annotations

import json

from .actions import LightAction
from .environment import StepEvents
from .state import HomeState

__all__ = [
    "state_to_doc",
    "state_from_doc",
    "action_to_doc",
    "events_to_doc",
    "trace_record",
]


def state_to_doc(state: HomeState) -> dict:
    return {
        "occupancy": list(state.occupancy),
        "minute_of_day": state.minute_of_day,
        "day_of_week": state.day_of_week,
        "day_of_year": state.day_of_year,
        "ambient_lux": state.ambient_lux,
        "weather_factor": state.weather_factor,
        "brightness": list(state.brightness),
        "cct": list(state.cct),
        "activity": state.activity,
    }


def state_from_doc(doc: dict) -> HomeState:
    return HomeState(
        occupancy=tuple(doc["occupancy"]),
        minute_of_day=doc["minute_of_day"],
        day_of_week=doc["day_of_week"],
        day_of_year=doc["day_of_year"],
        ambient_lux=doc["ambient_lux"],
        weather_factor=doc["weather_factor"],
        brightness=tuple(doc["brightness"]),
        cct=tuple(doc["cct"]),
        activity=doc["activity"],
    )


def action_to_doc(action: LightAction | None) -> dict | None:
    if action is None:
        return None
    return {"zone": action.zone, "brightness": action.brightness, "cct": action.cct}


def events_to_doc(events: StepEvents) -> dict:
    return {
        "override": list(events.override) if events.override else None,
        "arrivals": list(events.arrivals),
        "departures": list(events.departures),
    }


def trace_record(t: int, state: HomeState, action: LightAction | None,
                 reward: dict | None, events: StepEvents | None) -> str:
    """One JSON-lines trajectory record."""
    doc = {
        "t": t,
        "state": state_to_doc(state),
        "action": action_to_doc(action),
        "reward": reward,
        "events": events_to_doc(events) if events else None,
    }
    return json.dumps(doc, separators=(",", ":"))
