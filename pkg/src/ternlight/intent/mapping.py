"""Turn parsed intents into zone settings and concrete actions.

"all" fans out to every zone. Turning a zone on targets its preferred
brightness for the current activity at the color bin nearest the circadian
target; turning off keeps the zone's current color bin so the lamp state
stays well-formed.
"""

from __future__ import annotations

from ..sim import HomeConfig, HomeState, LightAction, nearest_cct_bin, target_cct
from .types import (
    ALL_ZONES,
    ActivateScene,
    Intent,
    QueryState,
    SetBrightness,
    SetColorTemp,
    TurnOff,
    TurnOn,
    intent_to_doc,
)

__all__ = ["MappingError", "intent_to_config"]


class MappingError(ValueError):
    """Intent references something this home does not have."""


def _zones_for(intent_zone: str, cfg: HomeConfig) -> list[int]:
    if intent_zone == ALL_ZONES:
        return list(range(cfg.n_zones))
    idx = cfg.zone_index(intent_zone)
    if idx is None:
        raise MappingError(f"unknown zone {intent_zone!r}")
    return [idx]


def intent_to_config(
    intent: Intent, state: HomeState, cfg: HomeConfig
) -> tuple[dict, list[LightAction]]:
    """Returns (configuration document, actions to apply)."""
    actions: list[LightAction] = []
    doc: dict = {"intent": intent_to_doc(intent)}

    if isinstance(intent, TurnOn):
        bin_k = nearest_cct_bin(target_cct(state.minute_of_day))
        for z in _zones_for(intent.zone, cfg):
            level = cfg.zones[z].preferred(bool(state.activity))
            actions.append(LightAction(z, level, bin_k))
    elif isinstance(intent, TurnOff):
        for z in _zones_for(intent.zone, cfg):
            actions.append(LightAction(z, 0, state.cct[z]))
    elif isinstance(intent, SetBrightness):
        for z in _zones_for(intent.zone, cfg):
            actions.append(LightAction(z, intent.pct, state.cct[z]))
    elif isinstance(intent, SetColorTemp):
        bin_k = nearest_cct_bin(intent.kelvin)
        for z in _zones_for(intent.zone, cfg):
            actions.append(LightAction(z, state.brightness[z], bin_k))
    elif isinstance(intent, ActivateScene):
        scene = cfg.scenes.get(intent.scene)
        if scene is None:
            raise MappingError(f"unknown scene {intent.scene!r}")
        for zone_name, setting in scene.items():
            z = cfg.zone_index(zone_name)
            actions.append(LightAction(z, setting["brightness"], setting["cct"]))
    elif isinstance(intent, QueryState):
        zones = (
            range(cfg.n_zones) if intent.zone is None else _zones_for(intent.zone, cfg)
        )
        doc["zones"] = [
            {
                "zone": cfg.zones[z].name,
                "brightness": state.brightness[z],
                "cct": state.cct[z],
                "occupied": bool(state.occupancy[z]),
            }
            for z in zones
        ]
        return doc, []
    else:
        raise MappingError(f"unsupported intent {intent!r}")

    doc["settings"] = [
        {"zone": cfg.zones[a.zone].name, "brightness": a.brightness, "cct": a.cct}
        for a in actions
    ]
    return doc, actions
