/** Wire protocol frames: every message is a JSON object with a "type" field. */

export interface PlacementEntry {
  object: string;
  x: number;
  y: number;
}

export type ServerFrame =
  | { type: "joined"; player_id: string }
  | { type: "round_start"; round: number; scene: string; placements: PlacementEntry[] }
  | { type: "chat"; from: string; text: string; ts: number }
  | { type: "move_ok"; object: string; x: number; y: number }
  | { type: "move_rejected"; object: string; reason: "overlap" | "out_of_bounds" }
  | { type: "round_end"; round: number; score: number; bonus: boolean }
  | { type: "game_end"; scores: number[]; reason?: string }
  | { type: "error"; code: string; message: string };

export type ClientFrame =
  | { type: "join"; room: string; name: string }
  | { type: "chat"; text: string }
  | { type: "move"; object: string; x: number; y: number }
  | { type: "ready" };

const SERVER_TYPES = new Set([
  "joined",
  "round_start",
  "chat",
  "move_ok",
  "move_rejected",
  "round_end",
  "game_end",
  "error",
]);

/** Parse one inbound message; null for anything that is not a known frame. */
export function parseServerFrame(raw: string): ServerFrame | null {
  let doc: unknown;
  try {
    doc = JSON.parse(raw);
  } catch {
    return null;
  }
  if (typeof doc !== "object" || doc === null) return null;
  const type = (doc as { type?: unknown }).type;
  if (typeof type !== "string" || !SERVER_TYPES.has(type)) return null;
  return doc as ServerFrame;
}
