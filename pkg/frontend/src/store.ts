// View model: the single source of truth the UI renders from.
//
// Every value traces to a gateway message. Events apply strictly in
// sequence order; anything at or below the last applied seq is a duplicate
// from a reconnect replay and is dropped, so a kill-and-restore never
// renders the same event twice or out of order. Zone state is replaced
// wholesale from whichever consistent document arrived last (snapshot or
// event) - never merged field-by-field across two sources.

import type { ConnectionStatus, GatewayEvent, RewardDoc, StateDoc, ZoneDoc } from "./types.js";

export interface FeedItem {
  seq: number;
  kind: string;
  label: string;
  userFeedback: boolean;
}

export interface ViewModel {
  zones: ZoneDoc[];
  reward: RewardDoc | null;
  energyKwh: number;
  mode: string;
  simStep: number;
  minuteOfDay: number;
  feed: FeedItem[];
  status: ConnectionStatus;
  lastSeq: number;
}

const FEED_LIMIT = 200;

export class DashboardStore {
  private model: ViewModel = {
    zones: [],
    reward: null,
    energyKwh: 0,
    mode: "unknown",
    simStep: 0,
    minuteOfDay: 0,
    feed: [],
    status: "connecting",
    lastSeq: 0,
  };
  private listeners: Array<(m: ViewModel) => void> = [];

  get view(): ViewModel {
    return this.model;
  }

  subscribe(listener: (m: ViewModel) => void): () => void {
    this.listeners.push(listener);
    listener(this.model);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private notify() {
    for (const l of this.listeners) l(this.model);
  }

  setStatus(status: ConnectionStatus) {
    this.model = { ...this.model, status };
    this.notify();
  }

  applySnapshot(doc: StateDoc) {
    // full refetch after (re)connect: replaces zone state wholesale and
    // fast-forwards the dedupe cursor
    this.model = {
      ...this.model,
      zones: doc.zones,
      reward: doc.reward ?? this.model.reward,
      mode: doc.mode,
      simStep: doc.sim_step,
      minuteOfDay: doc.minute_of_day,
      lastSeq: Math.max(this.model.lastSeq, doc.seq),
    };
    this.notify();
  }

  applyEvent(event: GatewayEvent): boolean {
    if (event.seq <= this.model.lastSeq) return false; // duplicate or stale
    const next: ViewModel = { ...this.model, lastSeq: event.seq };
    if (event.zones) next.zones = event.zones;
    if (event.reward) next.reward = event.reward;
    if (typeof event.energy_kwh === "number") next.energyKwh = event.energy_kwh;
    if (typeof event.minute_of_day === "number") next.minuteOfDay = event.minute_of_day;
    if (typeof event.t === "number") next.simStep = event.t;
    if (event.type === "mode" && event.mode) next.mode = event.mode;
    if (event.type === "step" && event.mode) next.mode = event.mode;
    next.feed = [...this.model.feed, feedItem(event)].slice(-FEED_LIMIT);
    this.model = next;
    this.notify();
    return true;
  }
}

function feedItem(event: GatewayEvent): FeedItem {
  let label: string;
  switch (event.type) {
    case "step":
      label = event.override
        ? `occupant override: zone ${event.override[0]} -> ${event.override[1]}%`
        : `step ${event.t ?? "?"}`;
      break;
    case "command":
      label = `command: ${event.text ?? ""}`;
      break;
    case "override":
      label = `override: zone ${event.zone} -> ${event.brightness}%`;
      break;
    case "mode":
      label = `mode -> ${event.mode}`;
      break;
    default:
      label = event.type;
  }
  return {
    seq: event.seq,
    kind: event.type,
    label,
    userFeedback: event.user_feedback === true || (event.type === "step" && !!event.override),
  };
}
