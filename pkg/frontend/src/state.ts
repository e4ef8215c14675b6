/** Client-side game state: mirrors the last server-acknowledged board and
 * reconciles optimistic drags (a rejected move snaps the object back).
 *
 * There is deliberately no field for partner placements: the protocol never
 * sends any, and nothing here would know where to put them.
 */

import type { ServerFrame } from "./protocol.js";

export type Phase =
  | "connecting"
  | "waiting"
  | "playing"
  | "round_done"
  | "finished"
  | "aborted"
  | "rejected";

export interface ChatLine {
  from: string;
  text: string;
  ts: number;
  own: boolean;
}

export interface RoundResult {
  round: number;
  score: number;
  bonus: boolean;
}

export interface ClientView {
  phase: Phase;
  playerId: string | null;
  round: number;
  sceneId: string | null;
  /** own placements, object -> grid centerpoint */
  placements: Map<string, { x: number; y: number }>;
  /** in-flight optimistic moves: object -> position to snap back to */
  pending: Map<string, { x: number; y: number }>;
  chat: ChatLine[];
  results: RoundResult[];
  finalScores: number[] | null;
  banner: string;
  /** transient rejection/error notice for the UI to flash, then clear */
  flash: string | null;
}

export function initialView(): ClientView {
  return {
    phase: "connecting",
    playerId: null,
    round: 0,
    sceneId: null,
    placements: new Map(),
    pending: new Map(),
    chat: [],
    results: [],
    finalScores: null,
    banner: "connecting…",
    flash: null,
  };
}

export function applyFrame(view: ClientView, frame: ServerFrame): ClientView {
  switch (frame.type) {
    case "joined":
      view.playerId = frame.player_id;
      view.phase = "waiting";
      view.banner = "waiting for your partner to join…";
      break;
    case "round_start":
      view.round = frame.round;
      view.sceneId = frame.scene;
      view.placements = new Map(frame.placements.map((p) => [p.object, { x: p.x, y: p.y }]));
      view.pending.clear();
      view.phase = "playing";
      view.banner = `round ${frame.round} · ${frame.scene} — agree on a layout, then press ready`;
      break;
    case "chat":
      view.chat.push({
        from: frame.from,
        text: frame.text,
        ts: frame.ts,
        own: frame.from === view.playerId,
      });
      break;
    case "move_ok":
      view.placements.set(frame.object, { x: frame.x, y: frame.y });
      view.pending.delete(frame.object);
      break;
    case "move_rejected": {
      const back = view.pending.get(frame.object);
      if (back) view.placements.set(frame.object, back);
      view.pending.delete(frame.object);
      view.flash =
        frame.reason === "overlap"
          ? `${frame.object}: that spot is taken`
          : `${frame.object}: off the board`;
      break;
    }
    case "round_end":
      view.results.push({ round: frame.round, score: frame.score, bonus: frame.bonus });
      view.phase = "round_done";
      view.banner = `round ${frame.round} scored ${frame.score.toFixed(1)}${frame.bonus ? " — bonus!" : ""}`;
      break;
    case "game_end":
      view.finalScores = frame.scores;
      if (frame.reason === "disconnect") {
        view.phase = "aborted";
        view.banner = "your partner disconnected — game over";
      } else {
        view.phase = "finished";
        view.banner = `game over — scores ${frame.scores.map((s) => s.toFixed(1)).join(" and ")}`;
      }
      break;
    case "error":
      if (frame.code === "room_full") {
        view.phase = "rejected";
        view.banner = "that room already has two players";
      } else {
        view.flash = frame.message;
      }
      break;
  }
  return view;
}

/** Start an optimistic move: remember the committed position for snap-back,
 * show the object at `to`, and return the frame to send (null when the move
 * is not possible right now). */
export function submitMove(
  view: ClientView,
  object: string,
  to: { x: number; y: number },
): { type: "move"; object: string; x: number; y: number } | null {
  if (view.phase !== "playing") return null;
  const committed = view.placements.get(object);
  if (!committed) return null;
  if (view.pending.has(object)) return null; // one verdict at a time per object
  if (committed.x === to.x && committed.y === to.y) return null;
  view.pending.set(object, committed);
  view.placements.set(object, to);
  return { type: "move", object, x: to.x, y: to.y };
}

export function takeFlash(view: ClientView): string | null {
  const f = view.flash;
  view.flash = null;
  return f;
}
