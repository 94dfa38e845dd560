"""Serialized runtime behind the gateway endpoints.

One lock guards the simulator, agent snapshot, metrics, trajectory log, and
event fan-out, so concurrent requests apply whole mutations in arrival
order: every applied command/override produces exactly one log record and
one event, with a strictly increasing sequence number shared across event
kinds. Subscribers receive events through per-connection queues.

Manual overrides synthesize replay transitions flagged as user feedback
(with the comfort penalty already folded into the reward), which is the
signal the learning side consumes.
"""

from __future__ import annotations

import json
import queue
import threading
from pathlib import Path

import numpy as np

from ..agent import (
    PrioritizedReplay,
    RewardWeights,
    Transition,
    compute_reward,
    encode_state,
)
from ..intent import Lexicon, intent_to_config, parse_command
from ..sim import (
    BRIGHTNESS_LEVELS,
    CCT_BINS,
    HomeConfig,
    HomeSimulator,
    LightAction,
    StepEvents,
    action_to_index,
    energy_of,
    rule_based_controller,
    state_to_doc,
)

__all__ = ["ModeLockedError", "ServerRuntime"]

REPLAY_CAPACITY = 20_000


class ModeLockedError(RuntimeError):
    """Commands are rejected while the baseline controller owns the home."""


class ServerRuntime:
    def __init__(
        self,
        cfg: HomeConfig,
        seed: int,
        mode: str = "manual",
        net=None,
        weights: RewardWeights | None = None,
        trajectory_path: str | Path | None = None,
    ):
        if mode not in ("agent", "rule_based", "manual"):
            raise ValueError(f"unknown mode {mode!r}")
        if mode == "agent" and net is None:
            raise ValueError("agent mode needs a loaded Q-network")
        self.cfg = cfg
        self.weights = weights or RewardWeights()
        self.sim = HomeSimulator(cfg, seed)
        self.state = self.sim.reset()
        self.net = net
        self.mode = mode
        self.lexicon = Lexicon.from_home_config(cfg)
        self.replay = PrioritizedReplay(REPLAY_CAPACITY)
        self._lock = threading.Lock()
        self._subscribers: list[queue.Queue] = []
        self._seq = 0
        self.sim_step = 0
        self.commands = 0
        self.overrides = 0
        self.energy_kwh = 0.0
        self.last_reward: dict | None = None
        self._log_fp = None
        if trajectory_path is not None:
            self._log_fp = open(trajectory_path, "a")
        self._stop = threading.Event()
        self._driver: threading.Thread | None = None

    # ------------------------------------------------------------- events

    def subscribe(self) -> queue.Queue:
        q: queue.Queue = queue.Queue(maxsize=1024)
        with self._lock:
            self._subscribers.append(q)
        return q

    def unsubscribe(self, q: queue.Queue) -> None:
        with self._lock:
            if q in self._subscribers:
                self._subscribers.remove(q)

    def _emit(self, kind: str, payload: dict) -> dict:
        # caller holds the lock
        self._seq += 1
        event = {"seq": self._seq, "type": kind, **payload}
        for q in list(self._subscribers):
            try:
                q.put_nowait(event)
            except queue.Full:
                pass
        return event

    def _log(self, record: dict) -> None:
        if self._log_fp is not None:
            self._log_fp.write(json.dumps(record, separators=(",", ":")) + "\n")
            self._log_fp.flush()

    # ------------------------------------------------------------ actions

    def _zone_docs(self) -> list[dict]:
        return [
            {
                "zone": z,
                "name": self.cfg.zones[z].name,
                "brightness": self.state.brightness[z],
                "cct": self.state.cct[z],
                "occupied": bool(self.state.occupancy[z]),
            }
            for z in range(self.cfg.n_zones)
        ]

    def submit_command(self, text: str, source: str = "ifttt") -> dict:
        with self._lock:
            if self.mode == "rule_based":
                raise ModeLockedError("baseline mode rejects commands")
            intent = parse_command(text, self.lexicon)  # ParseError propagates
            doc, actions = intent_to_config(intent, self.state, self.cfg)
            for action in actions:
                self.state = self.state.with_lighting(
                    action.zone, action.brightness, action.cct
                )
            self.commands += 1
            event = self._emit(
                "command",
                {
                    "text": text,
                    "source": source,
                    "intent": doc["intent"],
                    "actions": [
                        {"zone": a.zone, "brightness": a.brightness, "cct": a.cct}
                        for a in actions
                    ],
                    "zones": self._zone_docs(),
                },
            )
            self._log(
                {
                    "seq": event["seq"],
                    "t": self.sim_step,
                    "kind": "command",
                    "text": text,
                    "intent": doc["intent"],
                    "state": state_to_doc(self.state),
                    "reward": None,
                    "events": None,
                }
            )
            return {
                "intent": doc["intent"],
                "actions": event["actions"],
                "zones": self._zone_docs(),
                "seq": event["seq"],
                "doc": doc,
            }

    def submit_override(self, zone: int, brightness: int, cct: int | None = None) -> dict:
        with self._lock:
            if not 0 <= zone < self.cfg.n_zones:
                raise ValueError(f"unknown zone {zone}")
            if brightness not in BRIGHTNESS_LEVELS:
                raise ValueError(f"brightness {brightness} not on the 10% grid")
            if cct is not None and cct not in CCT_BINS:
                raise ValueError(f"cct {cct} is not a bin center")
            before = self.state
            new_cct = self.state.cct[zone] if cct is None else cct
            self.state = self.state.with_lighting(zone, brightness, new_cct)
            action = LightAction(zone, brightness, new_cct)
            events = StepEvents(override=(zone, brightness))
            breakdown = compute_reward(
                before, action, self.state, events, self.weights, self.cfg
            )
            transition = Transition(
                state=encode_state(before, self.cfg),
                action=action_to_index(action, self.cfg.n_zones),
                reward=breakdown,
                next_state=encode_state(self.state, self.cfg),
                terminal=False,
                override=True,
            )
            self.replay.insert(transition)
            self.overrides += 1
            reward_doc = {
                "r_energy": breakdown.r_energy,
                "r_comfort": breakdown.r_comfort,
                "r_circadian": breakdown.r_circadian,
                "total": breakdown.total,
            }
            event = self._emit(
                "override",
                {
                    "zone": zone,
                    "brightness": brightness,
                    "cct": new_cct,
                    "user_feedback": True,
                    "zones": self._zone_docs(),
                },
            )
            self._log(
                {
                    "seq": event["seq"],
                    "t": self.sim_step,
                    "kind": "override",
                    "state": state_to_doc(self.state),
                    "action": {"zone": zone, "brightness": brightness, "cct": new_cct},
                    "reward": reward_doc,
                    "events": {"override": [zone, brightness], "arrivals": [], "departures": []},
                    "override": True,
                }
            )
            return {"zone": zone, "brightness": brightness, "cct": new_cct, "seq": event["seq"]}

    def _controller_action(self):
        if self.mode == "rule_based":
            return rule_based_controller(self.state, self.cfg)
        if self.mode == "agent":
            q = self.net.forward(encode_state(self.state, self.cfg)[None, :])[0]
            from ..sim import index_to_action

            return index_to_action(int(np.argmax(q)), self.cfg.n_zones)
        return None

    def step_clock(self) -> dict:
        """Advance the simulator one step under the current controller."""
        with self._lock:
            before = self.state
            action = self._controller_action()
            next_state, events = self.sim.step(before, action)
            breakdown = compute_reward(
                before, action, next_state, events, self.weights, self.cfg
            )
            self.state = next_state
            self.sim_step += 1
            self.energy_kwh += (
                energy_of(next_state, self.cfg) * self.cfg.step_minutes / 60.0 / 1000.0
            )
            if events.override_occurred:
                self.overrides += 1
            transition = Transition(
                state=encode_state(before, self.cfg),
                action=action_to_index(action, self.cfg.n_zones),
                reward=breakdown,
                next_state=encode_state(next_state, self.cfg),
                terminal=False,
                override=events.override_occurred,
            )
            self.replay.insert(transition)
            reward_doc = {
                "r_energy": breakdown.r_energy,
                "r_comfort": breakdown.r_comfort,
                "r_circadian": breakdown.r_circadian,
                "total": breakdown.total,
            }
            self.last_reward = reward_doc
            event = self._emit(
                "step",
                {
                    "t": self.sim_step,
                    "mode": self.mode,
                    "action": None
                    if action is None
                    else {"zone": action.zone, "brightness": action.brightness, "cct": action.cct},
                    "reward": reward_doc,
                    "override": list(events.override) if events.override else None,
                    "energy_kwh": self.energy_kwh,
                    "zones": self._zone_docs(),
                    "minute_of_day": next_state.minute_of_day,
                },
            )
            self._log(
                {
                    "seq": event["seq"],
                    "t": self.sim_step,
                    "kind": "step",
                    "state": state_to_doc(next_state),
                    "action": None
                    if action is None
                    else {"zone": action.zone, "brightness": action.brightness, "cct": action.cct},
                    "reward": reward_doc,
                    "events": {
                        "override": list(events.override) if events.override else None,
                        "arrivals": list(events.arrivals),
                        "departures": list(events.departures),
                    },
                    "override": events.override_occurred,
                }
            )
            return event

    def set_mode(self, mode: str) -> dict:
        if mode not in ("agent", "rule_based", "manual"):
            raise ValueError(f"unknown mode {mode!r}")
        with self._lock:
            if mode == "agent" and self.net is None:
                raise ValueError("agent mode needs a loaded Q-network")
            previous, self.mode = self.mode, mode
            event = self._emit("mode", {"mode": mode, "previous": previous})
            self._log({"seq": event["seq"], "t": self.sim_step, "kind": "mode", "mode": mode})
            return event

    # ------------------------------------------------------------- views

    def snapshot(self) -> dict:
        with self._lock:
            return {
                "seq": self._seq,
                "sim_step": self.sim_step,
                "mode": self.mode,
                "minute_of_day": self.state.minute_of_day,
                "day_of_week": self.state.day_of_week,
                "day_of_year": self.state.day_of_year,
                "ambient_lux": self.state.ambient_lux,
                "weather_factor": self.state.weather_factor,
                "activity": self.state.activity,
                "zones": self._zone_docs(),
                "reward": self.last_reward,
            }

    def metrics(self) -> dict:
        with self._lock:
            return {
                "commands": self.commands,
                "overrides": self.overrides,
                "steps": self.sim_step,
                "energy_kwh": self.energy_kwh,
                "mode": self.mode,
                "seq": self._seq,
            }

    # ------------------------------------------------------------ driver

    def start_driver(self, steps_per_second: float) -> None:
        if steps_per_second <= 0:
            return

        def loop():
            period = 1.0 / steps_per_second
            while not self._stop.wait(period):
                self.step_clock()

        self._driver = threading.Thread(target=loop, daemon=True)
        self._driver.start()

    def close(self) -> None:
        self._stop.set()
        if self._driver is not None:
            self._driver.join(timeout=2.0)
        if self._log_fp is not None:
            self._log_fp.close()
            self._log_fp = None
