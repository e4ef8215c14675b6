/** Canvas rendering: background grid, landmarks, and draggable object sprites
 * (cartoonish emoji placeholders on rounded tiles). */

import type { SceneGeometry } from "./grid.js";
import { boxSizePx, gridToPixel } from "./grid.js";
import type { ClientView } from "./state.js";

const OBJECT_SPRITES: Record<string, { glyph: string; color: string }> = {
  pillow: { glyph: "🛏️", color: "#9ad0ec" },
  pants: { glyph: "👖", color: "#a3c4f3" },
  garbage: { glyph: "🗑️", color: "#b5e48c" },
  cap: { glyph: "🧢", color: "#f9c74f" },
  cowboy: { glyph: "🤠", color: "#f8ad9d" },
};

export function drawBoard(
  canvas: HTMLCanvasElement,
  view: ClientView,
  scene: SceneGeometry | null,
  dragging: string | null,
  dragPixel: { x: number; y: number } | null,
): void {
  const ctx = canvas.getContext("2d");
  if (!ctx) return;
  const { width: w, height: h } = canvas;
  ctx.clearRect(0, 0, w, h);
  ctx.fillStyle = "#fbf7ef";
  ctx.fillRect(0, 0, w, h);
  if (!scene) return;

  // faint grid
  ctx.strokeStyle = "#00000010";
  for (let gx = 0; gx <= scene.width; gx += 10) {
    const px = (gx * w) / scene.width;
    ctx.beginPath();
    ctx.moveTo(px, 0);
    ctx.lineTo(px, h);
    ctx.stroke();
  }
  for (let gy = 0; gy <= scene.height; gy += 10) {
    const py = (gy * h) / scene.height;
    ctx.beginPath();
    ctx.moveTo(0, py);
    ctx.lineTo(w, py);
    ctx.stroke();
  }

  // landmarks: labeled pads
  const pad = boxSizePx(scene, w) * 1.2;
  ctx.font = `${Math.round(pad * 0.28)}px sans-serif`;
  for (const [name, at] of Object.entries(scene.landmarks)) {
    const q = gridToPixel(at, scene, w, h);
    ctx.fillStyle = "#e9e2d0";
    roundRect(ctx, q.x - pad / 2, q.y - pad / 2, pad, pad, 8);
    ctx.fill();
    ctx.strokeStyle = "#c9bfa3";
    ctx.stroke();
    ctx.fillStyle = "#6b6248";
    ctx.textAlign = "center";
    ctx.textBaseline = "middle";
    ctx.fillText(name, q.x, q.y + pad * 0.38);
  }

  // movable objects
  const size = boxSizePx(scene, w);
  for (const [obj, at] of view.placements) {
    const q =
      obj === dragging && dragPixel ? dragPixel : gridToPixel(at, scene, w, h);
    const sprite = OBJECT_SPRITES[obj] ?? { glyph: "❓", color: "#dddddd" };
    ctx.fillStyle = sprite.color;
    roundRect(ctx, q.x - size / 2, q.y - size / 2, size, size, 6);
    ctx.fill();
    ctx.strokeStyle = obj === dragging ? "#333333" : "#00000030";
    ctx.stroke();
    ctx.font = `${Math.round(size * 0.62)}px serif`;
    ctx.textAlign = "center";
    ctx.textBaseline = "middle";
    ctx.fillText(sprite.glyph, q.x, q.y);
  }
}

/** Topmost object whose box contains the pixel, if any. */
export function hitTest(
  pixel: { x: number; y: number },
  view: ClientView,
  scene: SceneGeometry,
  canvasW: number,
  canvasH: number,
): string | null {
  const size = boxSizePx(scene, canvasW);
  let found: string | null = null;
  for (const [obj, at] of view.placements) {
    const q = gridToPixel(at, scene, canvasW, canvasH);
    if (Math.abs(pixel.x - q.x) <= size / 2 && Math.abs(pixel.y - q.y) <= size / 2) {
      found = obj; // last wins: matches draw order (drawn later = on top)
    }
  }
  return found;
}

function roundRect(
  ctx: CanvasRenderingContext2D,
  x: number,
  y: number,
  w: number,
  h: number,
  r: number,
): void {
  ctx.beginPath();
  ctx.moveTo(x + r, y);
  ctx.arcTo(x + w, y, x + w, y + h, r);
  ctx.arcTo(x + w, y + h, x, y + h, r);
  ctx.arcTo(x, y + h, x, y, r);
  ctx.arcTo(x, y, x + w, y, r);
  ctx.closePath();
}
