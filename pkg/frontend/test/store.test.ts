import { describe, expect, it } from "vitest";

import { DashboardStore } from "../src/store.js";
import type { GatewayEvent, StateDoc, ZoneDoc } from "../src/types.js";

function zones(brightness: number): ZoneDoc[] {
  return [
    { zone: 0, name: "kitchen", brightness, cct: 2700, occupied: true },
    { zone: 1, name: "office", brightness: 0, cct: 2700, occupied: false },
  ];
}

function snapshot(seq: number, brightness = 0): StateDoc {
  return {
    seq,
    sim_step: 0,
    mode: "manual",
    minute_of_day: 0,
    zones: zones(brightness),
    reward: null,
  };
}

function stepEvent(seq: number, brightness: number): GatewayEvent {
  return {
    seq,
    type: "step",
    t: seq,
    zones: zones(brightness),
    reward: { r_energy: -0.1, r_comfort: 1, r_circadian: 0.5, total: 1.15 },
    energy_kwh: 0.01 * seq,
  };
}

describe("dashboard store", () => {
  it("applies events in order and tracks the latest zones wholesale", () => {
    const store = new DashboardStore();
    store.applySnapshot(snapshot(0));
    expect(store.applyEvent(stepEvent(1, 10))).toBe(true);
    expect(store.applyEvent(stepEvent(2, 20))).toBe(true);
    expect(store.view.zones[0].brightness).toBe(20);
    expect(store.view.lastSeq).toBe(2);
    expect(store.view.feed.map((f) => f.seq)).toEqual([1, 2]);
  });

  it("drops duplicates and stale replays", () => {
    const store = new DashboardStore();
    store.applySnapshot(snapshot(5));
    expect(store.applyEvent(stepEvent(4, 99))).toBe(false);
    expect(store.applyEvent(stepEvent(5, 99))).toBe(false);
    expect(store.applyEvent(stepEvent(6, 30))).toBe(true);
    expect(store.applyEvent(stepEvent(6, 77))).toBe(false);
    expect(store.view.zones[0].brightness).toBe(30);
    const seqs = store.view.feed.map((f) => f.seq);
    expect(seqs).toEqual([...new Set(seqs)]);
  });

  it("never merges two snapshots: later snapshot replaces zones wholesale", () => {
    const store = new DashboardStore();
    store.applySnapshot(snapshot(1, 40));
    store.applySnapshot(snapshot(7, 90));
    expect(store.view.zones[0].brightness).toBe(90);
    expect(store.view.lastSeq).toBe(7);
    // an event from between the snapshots must not regress the view
    expect(store.applyEvent(stepEvent(3, 10))).toBe(false);
    expect(store.view.zones[0].brightness).toBe(90);
  });

  it("flags manual overrides as user feedback in the feed", () => {
    const store = new DashboardStore();
    store.applySnapshot(snapshot(0));
    store.applyEvent({
      seq: 1,
      type: "override",
      zone: 0,
      brightness: 80,
      cct: 2700,
      user_feedback: true,
      zones: zones(80),
    });
    expect(store.view.feed[0].userFeedback).toBe(true);
    expect(store.view.feed[0].label).toContain("override");
    expect(store.view.zones[0].brightness).toBe(80);
  });

  it("flags occupant overrides inside step events", () => {
    const store = new DashboardStore();
    store.applyEvent({ ...stepEvent(1, 60), override: [0, 60] });
    expect(store.view.feed[0].userFeedback).toBe(true);
  });

  it("tracks mode changes and energy", () => {
    const store = new DashboardStore();
    store.applyEvent({ seq: 1, type: "mode", mode: "agent" });
    expect(store.view.mode).toBe("agent");
    store.applyEvent(stepEvent(2, 0));
    expect(store.view.energyKwh).toBeCloseTo(0.02);
  });

  it("notifies subscribers and supports unsubscribe", () => {
    const store = new DashboardStore();
    let calls = 0;
    const stop = store.subscribe(() => calls++);
    store.applyEvent(stepEvent(1, 10));
    stop();
    store.applyEvent(stepEvent(2, 10));
    expect(calls).toBe(2); // initial + first event
  });

  it("caps the feed length", () => {
    const store = new DashboardStore();
    for (let i = 1; i <= 250; i++) store.applyEvent(stepEvent(i, 0));
    expect(store.view.feed.length).toBe(200);
    expect(store.view.feed[0].seq).toBe(51);
  });
});
