// Gateway client: plain POSTs on the write path, one SSE subscription on
// the read path. On a dropped stream it reconnects with exponential
// backoff and refetches the full state snapshot before resuming events;
// the store's sequence cursor makes replayed events harmless.

import { AuthError, readSSEStream } from "./sse.js";
import { DashboardStore } from "./store.js";
import type { GatewayEvent, StateDoc } from "./types.js";

export interface LiveSessionOptions {
  baseUrl: string;
  token: string;
  store: DashboardStore;
  backoffMs?: number;
  maxBackoffMs?: number;
  onAuthError?: (message: string) => void;
}

export class GatewayClient {
  constructor(private baseUrl: string, private token: string) {}

  private headers(): Record<string, string> {
    return { "X-Auth-Token": this.token, "Content-Type": "application/json" };
  }

  private url(path: string): string {
    return this.baseUrl.replace(/\/$/, "") + path;
  }

  async getState(): Promise<StateDoc> {
    const r = await fetch(this.url("/state"), { headers: this.headers() });
    if (r.status === 401) throw new AuthError("gateway rejected the token");
    if (!r.ok) throw new Error(`GET /state failed: HTTP ${r.status}`);
    return (await r.json()) as StateDoc;
  }

  async sendCommand(text: string): Promise<{ ok: boolean; status: number; body: any }> {
    const r = await fetch(this.url("/webhook/command"), {
      method: "POST",
      headers: this.headers(),
      body: JSON.stringify({ text, source: "dashboard" }),
    });
    return { ok: r.ok, status: r.status, body: await r.json() };
  }

  async sendOverride(
    zone: number,
    brightness: number,
    cct?: number,
  ): Promise<{ ok: boolean; status: number; body: any }> {
    const r = await fetch(this.url("/webhook/override"), {
      method: "POST",
      headers: this.headers(),
      body: JSON.stringify({ zone, brightness, cct: cct ?? null }),
    });
    return { ok: r.ok, status: r.status, body: await r.json() };
  }

  async setMode(mode: string): Promise<{ ok: boolean; status: number; body: any }> {
    const r = await fetch(this.url("/mode"), {
      method: "POST",
      headers: this.headers(),
      body: JSON.stringify({ mode }),
    });
    return { ok: r.ok, status: r.status, body: await r.json() };
  }

  eventsUrl(): string {
    return this.url("/events");
  }

  authHeaders(): Record<string, string> {
    return { "X-Auth-Token": this.token };
  }
}

export class LiveSession {
  private stopped = false;
  private controller: AbortController | null = null;
  readonly client: GatewayClient;

  constructor(private options: LiveSessionOptions) {
    this.client = new GatewayClient(options.baseUrl, options.token);
  }

  async start(): Promise<void> {
    const { store } = this.options;
    const backoff = this.options.backoffMs ?? 500;
    const maxBackoff = this.options.maxBackoffMs ?? 10_000;
    let delay = backoff;
    let firstAttempt = true;
    while (!this.stopped) {
      try {
        store.setStatus(firstAttempt ? "connecting" : "reconnecting");
        // full snapshot first, then the stream; replayed events below the
        // snapshot's seq are deduped by the store
        const snapshot = await this.client.getState();
        store.applySnapshot(snapshot);
        store.setStatus("connected");
        delay = backoff;
        firstAttempt = false;
        this.controller = new AbortController();
        await readSSEStream(
          this.client.eventsUrl(),
          this.client.authHeaders(),
          (msg) => {
            try {
              store.applyEvent(JSON.parse(msg.data) as GatewayEvent);
            } catch {
              // malformed frame: ignore, the next snapshot will resync
            }
          },
          this.controller.signal,
        );
        if (!this.stopped) throw new Error("event stream ended");
      } catch (err) {
        if (this.stopped) break;
        if (err instanceof AuthError) {
          store.setStatus("disconnected");
          this.options.onAuthError?.(err.message);
          return;
        }
        store.setStatus("reconnecting");
        await sleep(delay);
        delay = Math.min(delay * 2, maxBackoff);
      }
    }
    store.setStatus("disconnected");
  }

  stop(): void {
    this.stopped = true;
    this.controller?.abort();
  }
}

function sleep(ms: number): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, ms));
}
