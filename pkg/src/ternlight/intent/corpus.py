"""Deterministic synthetic command corpus.

Entries are template renderings over (intent type, room/scene/value slots),
perturbed by noise operators:

    0: canonical rendering; guaranteed to parse back to its intent
    1: + verb/room synonym swaps and polite fillers (parse-preserving)
    2: + case jitter, digit<->word numbers, extra fillers (parse-preserving)
    3: + token dropout / duplication / character typos (may break parsing)

Generation is chunked: chunk i of 1000 entries uses seed + i, so chunks can
be produced in parallel and concatenated without changing the output.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .grammar import Lexicon, snap_percent
from .types import (
    ALL_ZONES,
    ActivateScene,
    Intent,
    QueryState,
    SetBrightness,
    SetColorTemp,
    TurnOff,
    TurnOn,
    intent_from_doc,
    intent_to_doc,
)
from ..sim import nearest_cct_bin

__all__ = ["CorpusEntry", "generate_corpus", "write_corpus", "read_corpus", "split_corpus"]

CHUNK = 1000

PERCENTS = (0, 10, 15, 20, 25, 30, 37, 40, 50, 60, 65, 70, 75, 80, 90, 100)
KELVINS = (2700, 3000, 3500, 3650, 4000, 4600, 5000, 5550, 6000, 6500)

VERB_SYNONYMS = {
    "turn on": ("turn on", "switch on", "power on"),
    "turn off": ("turn off", "switch off", "power off"),
    "dim": ("dim", "lower"),
    "brighten": ("brighten", "raise"),
    "set": ("set", "change", "adjust"),
}

POLITE_PREFIX = ("please", "hey", "ok", "can you", "could you")
POLITE_SUFFIX = ("please", "now")

DIGIT_WORDS = {0: "zero", 10: "ten", 20: "twenty", 30: "thirty", 40: "forty",
               50: "fifty", 60: "sixty", 70: "seventy", 80: "eighty",
               90: "ninety", 100: "hundred"}


@dataclass(frozen=True)
class CorpusEntry:
    text: str
    intent: Intent
    noise_level: int

    def to_doc(self) -> dict:
        return {
            "text": self.text,
            "intent": intent_to_doc(self.intent),
            "noise_level": self.noise_level,
        }

    @classmethod
    def from_doc(cls, doc: dict) -> "CorpusEntry":
        return cls(doc["text"], intent_from_doc(doc["intent"]), int(doc["noise_level"]))


def _room_phrase(rng, lexicon: Lexicon, canonical: str, noisy: bool) -> str:
    surfaces = [s for s, c in lexicon.rooms.items() if c == canonical]
    if not noisy:
        surfaces = [canonical.lower()] if canonical != ALL_ZONES else [ALL_ZONES]
    return surfaces[int(rng.integers(0, len(surfaces)))]


def _pick_room(rng, lexicon: Lexicon, allow_all=True) -> str:
    canonicals = sorted({c for c in lexicon.rooms.values() if c != ALL_ZONES})
    if allow_all and rng.random() < 0.2:
        return ALL_ZONES
    return canonicals[int(rng.integers(0, len(canonicals)))]


def _render(rng, lexicon: Lexicon, noise: int) -> tuple[str, Intent]:
    kind = int(rng.integers(0, 6))
    noisy = noise >= 1

    def verb(key: str) -> str:
        options = VERB_SYNONYMS[key]
        return options[int(rng.integers(0, len(options)))] if noisy else options[0]

    if kind == 0:
        room = _pick_room(rng, lexicon)
        phrase = _room_phrase(rng, lexicon, room, noisy)
        templates = (f"{verb('turn on')} the {phrase} lights", f"{verb('turn on')} {phrase}")
        return templates[int(rng.integers(0, len(templates)))], TurnOn(room)
    if kind == 1:
        room = _pick_room(rng, lexicon)
        phrase = _room_phrase(rng, lexicon, room, noisy)
        templates = (f"{verb('turn off')} the {phrase} lights", f"{verb('turn off')} {phrase}")
        return templates[int(rng.integers(0, len(templates)))], TurnOff(room)
    if kind == 2:
        room = _pick_room(rng, lexicon)
        phrase = _room_phrase(rng, lexicon, room, noisy)
        pct = int(PERCENTS[int(rng.integers(0, len(PERCENTS)))])
        pct_txt = f"{pct}%" if rng.random() < 0.7 else str(pct)
        if noise >= 2 and pct in DIGIT_WORDS and rng.random() < 0.5:
            pct_txt = f"{DIGIT_WORDS[pct]} percent"
        if room == ALL_ZONES and rng.random() < 0.5:
            text = f"{verb('dim')} to {pct_txt}"
        else:
            stem = verb("dim") if rng.random() < 0.5 else verb("set")
            text = f"{stem} the {phrase} lights to {pct_txt}"
        return text, SetBrightness(room, snap_percent(pct))
    if kind == 3:
        room = _pick_room(rng, lexicon)
        phrase = _room_phrase(rng, lexicon, room, noisy)
        style = int(rng.integers(0, 3))
        if style == 0:
            kelvin = int(KELVINS[int(rng.integers(0, len(KELVINS)))])
            unit = "k" if rng.random() < 0.7 else " kelvin"
            text = f"{verb('set')} the {phrase} lights to {kelvin}{unit}"
            return text, SetColorTemp(room, nearest_cct_bin(kelvin))
        word = ("warmer", "cooler")[int(rng.integers(0, 2))]
        kelvin = 2700 if word == "warmer" else 6500
        if style == 1:
            return f"make the {phrase} lights {word}", SetColorTemp(room, kelvin)
        return f"{word} in the {phrase}" if room != ALL_ZONES else word, SetColorTemp(room, kelvin)
    if kind == 4:
        scenes = lexicon.scenes or ("evening",)
        scene = scenes[int(rng.integers(0, len(scenes)))]
        suffix = " scene" if rng.random() < 0.5 else ""
        return f"activate {scene}{suffix}", ActivateScene(scene)
    room = None if rng.random() < 0.4 else _pick_room(rng, lexicon, allow_all=False)
    if room is None:
        return "status", QueryState(None)
    phrase = _room_phrase(rng, lexicon, room, noisy)
    templates = (f"status of the {phrase}", f"what is the status of the {phrase}")
    return templates[int(rng.integers(0, len(templates)))], QueryState(room)


def _apply_noise(rng, text: str, noise: int) -> str:
    if noise >= 1 and rng.random() < 0.5:
        if rng.random() < 0.5:
            text = f"{POLITE_PREFIX[int(rng.integers(0, len(POLITE_PREFIX)))]} {text}"
        else:
            text = f"{text} {POLITE_SUFFIX[int(rng.integers(0, len(POLITE_SUFFIX)))]}"
    if noise >= 2:
        if rng.random() < 0.5:
            chars = [c.upper() if rng.random() < 0.25 else c for c in text]
            text = "".join(chars)
        if rng.random() < 0.3:
            text = f"{text}!"
    if noise >= 3:
        words = text.split()
        op = int(rng.integers(0, 3))
        if op == 0 and len(words) > 2:
            del words[int(rng.integers(0, len(words)))]
        elif op == 1:
            i = int(rng.integers(0, len(words)))
            words.insert(i, words[i])
        else:
            i = int(rng.integers(0, len(words)))
            w = words[i]
            if len(w) > 3:
                j = int(rng.integers(0, len(w) - 1))
                words[i] = w[:j] + w[j + 1] + w[j] + w[j + 2:]
        text = " ".join(words)
    return text


def generate_corpus(
    count: int,
    lexicon: Lexicon | None = None,
    seed: int = 0,
    noise_levels: tuple[int, ...] = (0, 1, 2, 3),
) -> list[CorpusEntry]:
    lexicon = lexicon or Lexicon.default()
    entries: list[CorpusEntry] = []
    chunks = (count + CHUNK - 1) // CHUNK
    for chunk_idx in range(chunks):
        rng = np.random.default_rng(seed + chunk_idx)
        take = min(CHUNK, count - chunk_idx * CHUNK)
        for _ in range(take):
            noise = int(noise_levels[int(rng.integers(0, len(noise_levels)))])
            text, intent = _render(rng, lexicon, noise)
            text = _apply_noise(rng, text, noise)
            entries.append(CorpusEntry(text, intent, noise))
    return entries


def write_corpus(path, entries: list[CorpusEntry]) -> None:
    with open(path, "w") as fp:
        for e in entries:
            fp.write(json.dumps(e.to_doc(), separators=(",", ":")) + "\n")


def read_corpus(path) -> list[CorpusEntry]:
    entries = []
    with open(path) as fp:
        for line in fp:
            line = line.strip()
            if line:
                entries.append(CorpusEntry.from_doc(json.loads(line)))
    return entries


def split_corpus(entries: list[CorpusEntry], held_out_fraction: float, seed: int):
    """Deterministic train/held-out split."""
    rng = np.random.default_rng(seed)
    order = rng.permutation(len(entries))
    cut = int(len(entries) * (1.0 - held_out_fraction))
    train = [entries[i] for i in order[:cut]]
    held = [entries[i] for i in order[cut:]]
    return train, held
