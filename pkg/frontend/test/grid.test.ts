import { describe, expect, it } from "vitest";

import { boxSizePx, clampToBoard, gridToPixel, pixelToGrid, type SceneGeometry } from "../src/grid.js";

const scene: SceneGeometry = {
  scene_id: "kitchen",
  width: 100,
  height: 100,
  object_extent: 10,
  objects: ["pillow"],
  landmarks: { fridge: { x: 15, y: 15 } },
};

describe("grid/pixel mapping", () => {
  it("round-trips every integer grid point", () => {
    for (const [w, h] of [
      [560, 560],
      [315, 315],
      [801, 801],
      [400, 640],
    ]) {
      for (let x = 0; x <= 100; x += 7) {
        for (let y = 0; y <= 100; y += 9) {
          const back = pixelToGrid(gridToPixel({ x, y }, scene, w, h), scene, w, h);
          expect(back).toEqual({ x, y });
        }
      }
    }
  });

  it("maps scene corners to canvas corners", () => {
    expect(gridToPixel({ x: 0, y: 0 }, scene, 560, 560)).toEqual({ x: 0, y: 0 });
    expect(gridToPixel({ x: 100, y: 100 }, scene, 560, 560)).toEqual({ x: 560, y: 560 });
  });

  it("scales the object box with the canvas", () => {
    expect(boxSizePx(scene, 560)).toBeCloseTo(56);
    expect(boxSizePx(scene, 100)).toBeCloseTo(10);
  });
});

describe("clampToBoard", () => {
  it("keeps the box fully inside", () => {
    expect(clampToBoard({ x: 0, y: 0 }, scene)).toEqual({ x: 5, y: 5 });
    expect(clampToBoard({ x: 100, y: 100 }, scene)).toEqual({ x: 95, y: 95 });
    expect(clampToBoard({ x: 50, y: 50 }, scene)).toEqual({ x: 50, y: 50 });
  });

  it("handles odd extents conservatively", () => {
    const odd = { ...scene, object_extent: 7 };
    const p = clampToBoard({ x: 0, y: 100 }, odd);
    expect(p.x).toBeGreaterThanOrEqual(4);
    expect(p.y).toBeLessThanOrEqual(96);
  });
});
