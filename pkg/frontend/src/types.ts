export interface ZoneDoc {
  zone: number;
  name: string;
  brightness: number;
  cct: number;
  occupied: boolean;
}

export interface RewardDoc {
  r_energy: number;
  r_comfort: number;
  r_circadian: number;
  total: number;
}

export interface StateDoc {
  seq: number;
  sim_step: number;
  mode: string;
  minute_of_day: number;
  zones: ZoneDoc[];
  reward: RewardDoc | null;
}

export interface GatewayEvent {
  seq: number;
  type: "step" | "command" | "override" | "mode";
  zones?: ZoneDoc[];
  reward?: RewardDoc;
  energy_kwh?: number;
  mode?: string;
  text?: string;
  intent?: unknown;
  zone?: number;
  brightness?: number;
  cct?: number;
  user_feedback?: boolean;
  minute_of_day?: number;
  override?: [number, number] | null;
  t?: number;
}

export type ConnectionStatus = "connecting" | "connected" | "reconnecting" | "disconnected";
