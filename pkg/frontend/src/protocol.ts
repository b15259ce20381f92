// Wire types for the session stream. The server is the single source of
// truth for all scene math; this side only validates shapes and passes
// values through untouched.

export type Rgba = [number, number, number, number];

export interface Segment {
  z0: number;
  z1: number;
  color: Rgba;
  contributors: number[];
}

export interface SignEntry {
  id: number;
  kind: string;
  symbol: string;
  lit: boolean;
}

export interface UiFrame {
  t: number;
  cursor_z: number;
  total_force: number;
  segments: Segment[];
  signs: SignEntry[];
}

export interface HelloMsg {
  type: "hello";
  rate: number;
  stream_rate: number;
  plant_mode: string;
  z_min: number;
  z_max: number;
}

export interface EventMsg {
  type: "event";
  t: number;
  dof_id: number;
  kind: string;
  speed: number;
}

export interface ErrorMsg {
  type: "error";
  code?: string;
  message?: string;
}

export interface OkMsg {
  type: "ok";
  op?: string;
  [key: string]: unknown;
}

export type ServerMsg =
  | ({ type: "frame" } & UiFrame)
  | HelloMsg
  | EventMsg
  | ErrorMsg
  | OkMsg;

const isNum = (x: unknown): x is number =>
  typeof x === "number" && Number.isFinite(x);

export function validateFrame(x: unknown): UiFrame | null {
  if (typeof x !== "object" || x === null) return null;
  const f = x as Record<string, unknown>;
  if (!isNum(f.t) || !isNum(f.cursor_z) || !isNum(f.total_force)) return null;
  if (!Array.isArray(f.segments) || !Array.isArray(f.signs)) return null;
  for (const s of f.segments) {
    if (!isNum(s?.z0) || !isNum(s?.z1) || s.z0 >= s.z1) return null;
    if (!Array.isArray(s.color) || s.color.length !== 4 || !s.color.every(isNum))
      return null;
    if (!Array.isArray(s.contributors) || s.contributors.length === 0)
      return null;
  }
  for (const e of f.signs) {
    if (!isNum(e?.id) || typeof e?.symbol !== "string" ||
        typeof e?.kind !== "string" || typeof e?.lit !== "boolean")
      return null;
  }
  return {
    t: f.t,
    cursor_z: f.cursor_z,
    total_force: f.total_force,
    segments: f.segments as Segment[],
    signs: f.signs as SignEntry[],
  };
}

// One JSON object per socket message (newline-terminated); anything
// unparseable or shapeless comes back null and the caller skips it.
export function parseServerMessage(raw: string): ServerMsg | null {
  let data: unknown;
  try {
    data = JSON.parse(raw);
  } catch {
    return null;
  }
  if (typeof data !== "object" || data === null) return null;
  const msg = data as Record<string, unknown>;
  switch (msg.type) {
    case "frame": {
      const frame = validateFrame(msg);
      return frame ? { type: "frame", ...frame } : null;
    }
    case "hello":
    case "event":
    case "error":
    case "ok":
      return msg as ServerMsg;
    default:
      return null;
  }
}

export type ControlMsg =
  | { set_intent: number }
  | { spawn: Record<string, unknown> }
  | { set: Record<string, unknown> }
  | { kill: string }
  | { load_script: string };
