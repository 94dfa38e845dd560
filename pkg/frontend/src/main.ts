// DOM wiring: renders the store and forwards user input to the gateway.

import { LiveSession } from "./client.js";
import { DashboardStore, ViewModel } from "./store.js";
import type { ZoneDoc } from "./types.js";

const CCT_BINS = [2700, 3650, 4600, 5550, 6500];

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function settings(): { baseUrl: string; token: string } {
  const params = new URLSearchParams(window.location.search);
  return {
    baseUrl:
      params.get("gateway") ??
      localStorage.getItem("gateway-url") ??
      "http://127.0.0.1:8787",
    token: params.get("token") ?? localStorage.getItem("gateway-token") ?? "",
  };
}

function zoneCard(zone: ZoneDoc, session: LiveSession): HTMLElement {
  const card = document.createElement("div");
  card.className = `zone ${zone.occupied ? "occupied" : ""}`;
  const title = document.createElement("h3");
  title.textContent = `${zone.name}${zone.occupied ? " (occupied)" : ""}`;
  const level = document.createElement("div");
  level.className = "level";
  level.textContent = `${zone.brightness}% @ ${zone.cct}K`;
  const slider = document.createElement("input");
  slider.type = "range";
  slider.min = "0";
  slider.max = "100";
  slider.step = "10";
  slider.value = String(zone.brightness);
  slider.title = "override brightness";
  slider.addEventListener("change", async () => {
    const r = await session.client.sendOverride(zone.zone, Number(slider.value));
    if (!r.ok) flash(`override failed: ${r.body?.error ?? r.status}`);
  });
  const cct = document.createElement("select");
  for (const k of CCT_BINS) {
    const opt = document.createElement("option");
    opt.value = String(k);
    opt.textContent = `${k}K`;
    if (k === zone.cct) opt.selected = true;
    cct.appendChild(opt);
  }
  cct.addEventListener("change", async () => {
    const r = await session.client.sendOverride(
      zone.zone,
      zone.brightness,
      Number(cct.value),
    );
    if (!r.ok) flash(`override failed: ${r.body?.error ?? r.status}`);
  });
  card.append(title, level, slider, cct);
  return card;
}

function flash(message: string) {
  const box = el<HTMLDivElement>("flash");
  box.textContent = message;
  box.classList.add("visible");
  setTimeout(() => box.classList.remove("visible"), 4000);
}

function render(model: ViewModel, session: LiveSession) {
  el<HTMLSpanElement>("status").textContent = model.status;
  el<HTMLSpanElement>("status").dataset.state = model.status;
  el<HTMLSpanElement>("mode").textContent = model.mode;
  el<HTMLSpanElement>("energy").textContent = `${model.energyKwh.toFixed(3)} kWh`;
  el<HTMLSpanElement>("clock").textContent = `${String(
    Math.floor(model.minuteOfDay / 60),
  ).padStart(2, "0")}:${String(model.minuteOfDay % 60).padStart(2, "0")}`;
  const reward = model.reward;
  el<HTMLSpanElement>("reward").textContent = reward
    ? `total ${reward.total.toFixed(3)} (energy ${reward.r_energy.toFixed(2)}, ` +
      `comfort ${reward.r_comfort.toFixed(2)}, circadian ${reward.r_circadian.toFixed(2)})`
    : "n/a";

  const zones = el<HTMLDivElement>("zones");
  zones.replaceChildren(...model.zones.map((z) => zoneCard(z, session)));

  const feed = el<HTMLUListElement>("feed");
  feed.replaceChildren(
    ...model.feed
      .slice(-40)
      .reverse()
      .map((item) => {
        const li = document.createElement("li");
        li.textContent = `#${item.seq} ${item.label}`;
        li.className = item.userFeedback ? "feedback" : item.kind;
        return li;
      }),
  );
}

export function boot() {
  const { baseUrl, token } = settings();
  el<HTMLInputElement>("gateway-url").value = baseUrl;
  el<HTMLInputElement>("gateway-token").value = token;

  const store = new DashboardStore();
  let session = new LiveSession({
    baseUrl,
    token,
    store,
    onAuthError: (m) => flash(`authentication failed: ${m}`),
  });
  store.subscribe((model) => render(model, session));
  void session.start();

  el<HTMLFormElement>("settings-form").addEventListener("submit", (ev) => {
    ev.preventDefault();
    localStorage.setItem("gateway-url", el<HTMLInputElement>("gateway-url").value);
    localStorage.setItem("gateway-token", el<HTMLInputElement>("gateway-token").value);
    window.location.search = "";
  });

  el<HTMLFormElement>("command-form").addEventListener("submit", async (ev) => {
    ev.preventDefault();
    const input = el<HTMLInputElement>("command-input");
    const text = input.value.trim();
    if (!text) return;
    const r = await session.client.sendCommand(text);
    if (r.ok) {
      flash(`parsed: ${JSON.stringify(r.body.intent)}`);
      input.value = "";
    } else if (r.status === 422) {
      flash(`no parse (${r.body.slot}): ${r.body.error}`);
    } else if (r.status === 409) {
      flash("commands are disabled while the rule-based controller is active");
    } else {
      flash(`command failed: ${r.body?.error ?? r.status}`);
    }
  });

  el<HTMLSelectElement>("mode-select").addEventListener("change", async (ev) => {
    const mode = (ev.target as HTMLSelectElement).value;
    const r = await session.client.setMode(mode);
    if (!r.ok) flash(`mode switch failed: ${r.body?.error ?? r.status}`);
  });

  window.addEventListener("beforeunload", () => session.stop());
}

boot();
