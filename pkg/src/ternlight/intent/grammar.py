"""Deterministic grammar for lighting commands.

The pipeline lowercases, strips punctuation, tokenizes on whitespace, drops
filler tokens, then matches verb phrases: turn on/off, dim/brighten to,
set ... to, make ... warmer/cooler, activate, status. Room phrases resolve
against a lexicon of zone names and synonyms; percentages snap to the 10%
grid and kelvin values snap to the nearest color-temperature bin.

Failures raise ParseError with the failing slot, never an arbitrary
exception: any byte string either parses to exactly one Intent or reports
which slot could not be filled.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from ..sim import HomeConfig, nearest_cct_bin
from .types import (
    ALL_ZONES,
    ActivateScene,
    Intent,
    QueryState,
    SetBrightness,
    SetColorTemp,
    TurnOff,
    TurnOn,
)

__all__ = ["ParseError", "Lexicon", "parse_command", "normalize", "snap_percent"]

_PUNCT = re.compile(r"[^\w%]+")

FILLERS = frozenset(
    "please hey ok okay the a an my our your his her their can could would you "
    "me us now just really very what is are of in at for lights light "
    "lamp lamps".split()
)

WORD_NUMBERS = {
    "zero": 0, "ten": 10, "twenty": 20, "thirty": 30, "forty": 40,
    "fifty": 50, "sixty": 60, "seventy": 70, "eighty": 80, "ninety": 90,
    "hundred": 100, "percent": "%",
}

WORD_CCT = {"warm": 2700, "warmer": 2700, "cool": 6500, "cooler": 6500, "neutral": 4600}

KELVIN_RANGE = (2000, 7500)


class ParseError(ValueError):
    """No parse; slot names the part that failed (verb, room, percent, kelvin, scene)."""

    def __init__(self, slot: str, message: str):
        super().__init__(message)
        self.slot = slot
        self.message = message


@dataclass
class Lexicon:
    """Surface form -> canonical zone name, plus known scene names."""

    rooms: dict[str, str] = field(default_factory=dict)
    scenes: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.rooms:
            raise ValueError("lexicon needs at least one room entry")
        for phrase in (
            ALL_ZONES,
            "everywhere",
            "everything",
            "every room",
            "all rooms",
            "house",
            "whole house",
        ):
            self.rooms.setdefault(phrase, ALL_ZONES)

    @classmethod
    def from_home_config(cls, cfg: HomeConfig) -> "Lexicon":
        rooms: dict[str, str] = {}
        for zone in cfg.zones:
            rooms[zone.name.lower()] = zone.name
            for syn in zone.synonyms:
                rooms[syn.lower()] = zone.name
        return cls(rooms=rooms, scenes=tuple(sorted(cfg.scenes)))

    @classmethod
    def default(cls) -> "Lexicon":
        """Standalone lexicon for corpus generation without a home config."""
        rooms = {
            "living room": "living room", "living": "living room",
            "lounge": "living room", "den": "living room",
            "kitchen": "kitchen", "cooking area": "kitchen",
            "bedroom": "bedroom", "master bedroom": "bedroom", "bed room": "bedroom",
            "office": "office", "study": "office", "home office": "office",
            "bathroom": "bathroom", "hallway": "hallway", "hall": "hallway",
        }
        return cls(rooms=rooms, scenes=("evening", "movie", "focus", "night"))

    def resolve_room(self, phrase: str) -> str:
        key = phrase.strip()
        if not key:
            return ALL_ZONES
        if key in self.rooms:
            return self.rooms[key]
        raise ParseError("room", f"unknown room {phrase!r}")


def normalize(text: str) -> list[str]:
    return [t for t in _PUNCT.sub(" ", text.lower()).split() if t]


def _drop_fillers(tokens: list[str]) -> list[str]:
    return [t for t in tokens if t not in FILLERS]


def _parse_number(token: str):
    """Returns (value, kind) with kind in {'percent', 'kelvin', 'bare'} or None."""
    if token in WORD_NUMBERS and WORD_NUMBERS[token] != "%":
        return WORD_NUMBERS[token], "bare"
    m = re.fullmatch(r"(\d+)(%|k|kelvin)?", token)
    if not m:
        return None
    value = int(m.group(1))
    suffix = m.group(2)
    if suffix == "%":
        return value, "percent"
    if suffix in ("k", "kelvin"):
        return value, "kelvin"
    return value, "bare"


def snap_percent(raw: int) -> int:
    if not 0 <= raw <= 100:
        raise ParseError("percent", f"percentage {raw} out of 0..100")
    return min(100, (raw + 5) // 10 * 10)


def _snap_kelvin(raw: int) -> int:
    if not KELVIN_RANGE[0] <= raw <= KELVIN_RANGE[1]:
        raise ParseError("kelvin", f"kelvin {raw} outside {KELVIN_RANGE}")
    return nearest_cct_bin(raw)


def _extract_value(tokens: list[str]):
    """Finds the first numeric or word-value token; returns (value, kind, rest)."""
    rest = []
    found = None
    for i, tok in enumerate(tokens):
        if tok in WORD_CCT and found is None:
            found = (WORD_CCT[tok], "kelvin")
            continue
        if tok == "percent" and found is not None and found[1] == "bare":
            found = (found[0], "percent")
            continue
        if tok == "kelvin" and found is not None and found[1] == "bare":
            found = (found[0], "kelvin")
            continue
        parsed = _parse_number(tok) if found is None else None
        if parsed is not None:
            found = parsed
            continue
        rest.append(tok)
    if found is None:
        return None, None, rest
    return found[0], found[1], rest


def parse_command(text: str, lexicon: Lexicon) -> Intent:
    tokens = _drop_fillers(normalize(text))
    if not tokens:
        raise ParseError("verb", "empty command")

    head = tokens[0]

    if head in ("turn", "switch", "power"):
        if len(tokens) >= 2 and tokens[1] in ("on", "off"):
            on = tokens[1] == "on"
            room = lexicon.resolve_room(" ".join(tokens[2:]))
        elif tokens[-1] in ("on", "off"):
            on = tokens[-1] == "on"
            room = lexicon.resolve_room(" ".join(tokens[1:-1]))
        else:
            raise ParseError("verb", f"expected on/off after {head!r}")
        return TurnOn(room) if on else TurnOff(room)

    if head in ("dim", "brighten", "lower", "raise"):
        value, kind, rest = _extract_value(tokens[1:])
        if value is None:
            raise ParseError("percent", f"{head!r} needs a target percentage")
        if kind == "kelvin":
            raise ParseError("percent", f"{head!r} takes a percentage, not kelvin")
        room = lexicon.resolve_room(" ".join(t for t in rest if t != "to"))
        return SetBrightness(room, snap_percent(value))

    if head in ("set", "make", "change", "adjust"):
        body = tokens[1:]
        mode = None
        kept: list[str] = []
        for tok in body:
            if tok in ("brightness", "bright"):
                mode = "percent"
            elif tok in ("color", "colour", "temperature", "temp"):
                mode = "kelvin"
            else:
                kept.append(tok)
        value, kind, rest = _extract_value(kept)
        if value is None:
            slot = "kelvin" if mode == "kelvin" else "percent"
            raise ParseError(slot, f"{head!r} needs a target value")
        room = lexicon.resolve_room(" ".join(t for t in rest if t != "to"))
        if kind == "kelvin" or (kind == "bare" and (mode == "kelvin" or value > 100)):
            return SetColorTemp(room, _snap_kelvin(value))
        if mode == "kelvin":
            raise ParseError("kelvin", f"kelvin value {value} outside {KELVIN_RANGE}")
        return SetBrightness(room, snap_percent(value))

    if head in WORD_CCT:  # bare "warmer" / "cooler"
        room = lexicon.resolve_room(" ".join(tokens[1:]))
        return SetColorTemp(room, WORD_CCT[head])
    if tokens[-1] in WORD_CCT:  # "kitchen warmer"
        room = lexicon.resolve_room(" ".join(tokens[:-1]))
        return SetColorTemp(room, WORD_CCT[tokens[-1]])

    if head == "activate":
        scene = " ".join(t for t in tokens[1:] if t != "scene")
        if not scene:
            raise ParseError("scene", "activate needs a scene name")
        return ActivateScene(scene)

    if head == "status":
        phrase = " ".join(tokens[1:])
        return QueryState(None if not phrase else lexicon.resolve_room(phrase))
    if tokens[-1] == "status":
        phrase = " ".join(tokens[:-1])
        return QueryState(None if not phrase else lexicon.resolve_room(phrase))

    raise ParseError("verb", f"no known command verb in {text!r}")
