"""Request/response bodies for the webhook gateway."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field

__all__ = [
    "CommandRequest",
    "OverrideRequest",
    "ModeRequest",
    "CommandResponse",
    "OverrideResponse",
    "ZoneStateDoc",
    "StateResponse",
    "MetricsResponse",
    "ErrorResponse",
]


class CommandRequest(BaseModel):
    text: str
    source: Literal["ifttt", "dashboard", "cli"] = "ifttt"
    timestamp: Optional[str] = None
    token: Optional[str] = None


class OverrideRequest(BaseModel):
    zone: int
    brightness: int
    cct: Optional[int] = None
    timestamp: Optional[str] = None
    token: Optional[str] = None


class ModeRequest(BaseModel):
    mode: Literal["agent", "rule_based", "manual"]
    token: Optional[str] = None


class ZoneStateDoc(BaseModel):
    zone: int
    name: str
    brightness: int
    cct: int
    occupied: bool


class CommandResponse(BaseModel):
    intent: dict
    actions: list[dict]
    zones: list[ZoneStateDoc]
    seq: int


class OverrideResponse(BaseModel):
    zone: int
    brightness: int
    cct: int
    seq: int


class StateResponse(BaseModel):
    seq: int
    sim_step: int
    mode: str
    minute_of_day: int
    day_of_week: int
    day_of_year: int
    ambient_lux: float
    weather_factor: float
    activity: int
    zones: list[ZoneStateDoc]
    reward: Optional[dict] = None


class MetricsResponse(BaseModel):
    commands: int
    overrides: int
    steps: int
    energy_kwh: float
    mode: str
    seq: int


class ErrorResponse(BaseModel):
    error: str
    slot: Optional[str] = None
    detail: Optional[str] = Field(default=None)
