/** Grid <-> pixel mapping: a pure, invertible affine map given canvas size. */

export interface SceneGeometry {
  scene_id: string;
  width: number;
  height: number;
  object_extent: number;
  objects: string[];
  landmarks: Record<string, { x: number; y: number }>;
}

export interface Pixel {
  x: number;
  y: number;
}

export interface GridPoint {
  x: number;
  y: number;
}

export function gridToPixel(p: GridPoint, scene: SceneGeometry, canvasW: number, canvasH: number): Pixel {
  return {
    x: (p.x * canvasW) / scene.width,
    y: (p.y * canvasH) / scene.height,
  };
}

export function pixelToGrid(q: Pixel, scene: SceneGeometry, canvasW: number, canvasH: number): GridPoint {
  return {
    x: Math.round((q.x * scene.width) / canvasW),
    y: Math.round((q.y * scene.height) / canvasH),
  };
}

/** Clamp a centerpoint so the object's box stays fully on the board. */
export function clampToBoard(p: GridPoint, scene: SceneGeometry): GridPoint {
  const half = scene.object_extent / 2;
  const lo = Math.ceil(half);
  return {
    x: Math.min(Math.max(p.x, lo), Math.floor(scene.width - half)),
    y: Math.min(Math.max(p.y, lo), Math.floor(scene.height - half)),
  };
}

/** Pixel side length of an object box on the canvas. */
export function boxSizePx(scene: SceneGeometry, canvasW: number): number {
  return (scene.object_extent * canvasW) / scene.width;
}
