"""Structured lighting commands."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

__all__ = [
    "TurnOn",
    "TurnOff",
    "SetBrightness",
    "SetColorTemp",
    "ActivateScene",
    "QueryState",
    "Intent",
    "ALL_ZONES",
    "intent_to_doc",
    "intent_from_doc",
    "intent_label",
    "INTENT_LABELS",
]

ALL_ZONES = "all"


@dataclass(frozen=True)
class TurnOn:
    zone: str


@dataclass(frozen=True)
class TurnOff:
    zone: str


@dataclass(frozen=True)
class SetBrightness:
    zone: str
    pct: int


@dataclass(frozen=True)
class SetColorTemp:
    zone: str
    kelvin: int


@dataclass(frozen=True)
class ActivateScene:
    scene: str


@dataclass(frozen=True)
class QueryState:
    zone: str | None = None


Intent = Union[TurnOn, TurnOff, SetBrightness, SetColorTemp, ActivateScene, QueryState]

INTENT_LABELS = (
    "turn_on",
    "turn_off",
    "set_brightness",
    "set_color_temp",
    "activate_scene",
    "query_state",
)

_LABELS = {
    TurnOn: "turn_on",
    TurnOff: "turn_off",
    SetBrightness: "set_brightness",
    SetColorTemp: "set_color_temp",
    ActivateScene: "activate_scene",
    QueryState: "query_state",
}


def intent_label(intent: Intent) -> str:
    return _LABELS[type(intent)]


def intent_to_doc(intent: Intent) -> dict:
    doc = {"type": intent_label(intent)}
    if isinstance(intent, (TurnOn, TurnOff)):
        doc["zone"] = intent.zone
    elif isinstance(intent, SetBrightness):
        doc["zone"] = intent.zone
        doc["pct"] = intent.pct
    elif isinstance(intent, SetColorTemp):
        doc["zone"] = intent.zone
        doc["kelvin"] = intent.kelvin
    elif isinstance(intent, ActivateScene):
        doc["scene"] = intent.scene
    elif isinstance(intent, QueryState):
        doc["zone"] = intent.zone
    return doc


def intent_from_doc(doc: dict) -> Intent:
    kind = doc["type"]
    if kind == "turn_on":
        return TurnOn(doc["zone"])
    if kind == "turn_off":
        return TurnOff(doc["zone"])
    if kind == "set_brightness":
        return SetBrightness(doc["zone"], int(doc["pct"]))
    if kind == "set_color_temp":
        return SetColorTemp(doc["zone"], int(doc["kelvin"]))
    if kind == "activate_scene":
        return ActivateScene(doc["scene"])
    if kind == "query_state":
        return QueryState(doc.get("zone"))
    raise ValueError(f"unknown intent type {kind!r}")
