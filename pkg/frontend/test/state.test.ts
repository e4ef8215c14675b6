import { beforeEach, describe, expect, it } from "vitest";

import type { ServerFrame } from "../src/protocol.js";
import { applyFrame, initialView, submitMove, takeFlash, type ClientView } from "../src/state.js";

const ROUND_START: ServerFrame = {
  type: "round_start",
  round: 1,
  scene: "kitchen",
  placements: [
    { object: "pillow", x: 20, y: 20 },
    { object: "cap", x: 60, y: 60 },
  ],
};

let view: ClientView;

beforeEach(() => {
  view = initialView();
  applyFrame(view, { type: "joined", player_id: "p1" });
});

describe("join and round start", () => {
  it("waits until the partner arrives", () => {
    expect(view.phase).toBe("waiting");
    expect(view.banner).toContain("waiting");
  });

  it("adopts own placements on round_start", () => {
    applyFrame(view, ROUND_START);
    expect(view.phase).toBe("playing");
    expect(view.round).toBe(1);
    expect(view.placements.get("pillow")).toEqual({ x: 20, y: 20 });
    expect(view.placements.size).toBe(2);
  });

  it("shows an error banner when the room is full", () => {
    applyFrame(view, { type: "error", code: "room_full", message: "room already has two players" });
    expect(view.phase).toBe("rejected");
    expect(view.banner).toContain("two players");
  });
});

describe("optimistic moves", () => {
  beforeEach(() => applyFrame(view, ROUND_START));

  it("commits on move_ok", () => {
    const frame = submitMove(view, "pillow", { x: 30, y: 25 });
    expect(frame).toEqual({ type: "move", object: "pillow", x: 30, y: 25 });
    expect(view.placements.get("pillow")).toEqual({ x: 30, y: 25 }); // optimistic
    applyFrame(view, { type: "move_ok", object: "pillow", x: 30, y: 25 });
    expect(view.placements.get("pillow")).toEqual({ x: 30, y: 25 });
    expect(view.pending.size).toBe(0);
  });

  it("snaps back and flashes on rejection", () => {
    submitMove(view, "pillow", { x: 60, y: 60 });
    expect(view.placements.get("pillow")).toEqual({ x: 60, y: 60 });
    applyFrame(view, { type: "move_rejected", object: "pillow", reason: "overlap" });
    expect(view.placements.get("pillow")).toEqual({ x: 20, y: 20 }); // snapped back
    expect(takeFlash(view)).toContain("taken");
    expect(takeFlash(view)).toBeNull(); // flash is consumed once
  });

  it("flashes differently for off-board drops", () => {
    submitMove(view, "cap", { x: 2, y: 2 });
    applyFrame(view, { type: "move_rejected", object: "cap", reason: "out_of_bounds" });
    expect(takeFlash(view)).toContain("off the board");
  });

  it("allows one in-flight move per object", () => {
    expect(submitMove(view, "pillow", { x: 30, y: 25 })).not.toBeNull();
    expect(submitMove(view, "pillow", { x: 40, y: 25 })).toBeNull();
    expect(submitMove(view, "cap", { x: 80, y: 80 })).not.toBeNull();
  });

  it("refuses moves outside a round or for unknown objects", () => {
    expect(submitMove(view, "sofa", { x: 30, y: 30 })).toBeNull();
    applyFrame(view, { type: "round_end", round: 1, score: 80, bonus: false });
    expect(submitMove(view, "pillow", { x: 30, y: 30 })).toBeNull();
  });

  it("ignores no-op drops", () => {
    expect(submitMove(view, "pillow", { x: 20, y: 20 })).toBeNull();
  });
});

describe("chat", () => {
  beforeEach(() => applyFrame(view, ROUND_START));

  it("keeps arrival order and marks own lines", () => {
    applyFrame(view, { type: "chat", from: "p2", text: "fridge first?", ts: 1 });
    applyFrame(view, { type: "chat", from: "p1", text: "yes", ts: 2 });
    expect(view.chat.map((l) => l.text)).toEqual(["fridge first?", "yes"]);
    expect(view.chat.map((l) => l.own)).toEqual([false, true]);
  });
});

describe("round and game end", () => {
  beforeEach(() => applyFrame(view, ROUND_START));

  it("records scores and brags about bonuses", () => {
    applyFrame(view, { type: "round_end", round: 1, score: 99.5, bonus: true });
    expect(view.results).toEqual([{ round: 1, score: 99.5, bonus: true }]);
    expect(view.banner).toContain("bonus");
  });

  it("resets the board for round 2", () => {
    applyFrame(view, { type: "round_end", round: 1, score: 90, bonus: false });
    applyFrame(view, {
      type: "round_start",
      round: 2,
      scene: "livingroom",
      placements: [{ object: "pillow", x: 10, y: 90 }],
    });
    expect(view.round).toBe(2);
    expect(view.sceneId).toBe("livingroom");
    expect(view.placements.get("pillow")).toEqual({ x: 10, y: 90 });
    expect(view.pending.size).toBe(0);
  });

  it("finishes normally with both scores", () => {
    applyFrame(view, { type: "game_end", scores: [100, 98.2] });
    expect(view.phase).toBe("finished");
    expect(view.finalScores).toEqual([100, 98.2]);
  });

  it("shows the aborted banner when the partner disconnects", () => {
    applyFrame(view, { type: "game_end", scores: [], reason: "disconnect" });
    expect(view.phase).toBe("aborted");
    expect(view.banner).toContain("disconnected");
  });
});

describe("privacy by construction", () => {
  it("has no structure that could hold partner placements", () => {
    expect(Object.keys(initialView()).some((k) => k.toLowerCase().includes("partner"))).toBe(false);
  });

  it("only board frames touch placements", () => {
    applyFrame(view, ROUND_START);
    const before = new Map(view.placements);
    applyFrame(view, { type: "chat", from: "p2", text: "cap at 90,90 for me", ts: 3 });
    applyFrame(view, { type: "round_end", round: 1, score: 50, bonus: false });
    applyFrame(view, { type: "error", code: "empty_chat", message: "nope" });
    expect(view.placements).toEqual(before);
  });
});
