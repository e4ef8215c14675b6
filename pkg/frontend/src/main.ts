/** DOM wiring: join form, board canvas with drag-and-drop, chat pane,
 * ready button, status banners. */

import type { SceneGeometry } from "./grid.js";
import { clampToBoard, pixelToGrid } from "./grid.js";
import { connect, type GameSocket } from "./net.js";
import { drawBoard, hitTest } from "./render.js";
import { applyFrame, initialView, submitMove, takeFlash, type ClientView } from "./state.js";

const $ = <T extends HTMLElement>(id: string): T => {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el as T;
};

const joinPane = $("join-pane");
const gamePane = $("game-pane");
const banner = $("banner");
const flashBox = $("flash");
const canvas = $<HTMLCanvasElement>("board");
const chatLog = $("chat-log");
const chatInput = $<HTMLInputElement>("chat-input");
const chatForm = $<HTMLFormElement>("chat-form");
const readyBtn = $<HTMLButtonElement>("ready-btn");
const scorePane = $("scores");

let view: ClientView = initialView();
let socket: GameSocket | null = null;
let scene: SceneGeometry | null = null;
let dragging: string | null = null;
let dragPixel: { x: number; y: number } | null = null;

function redraw(): void {
  banner.textContent = view.banner;
  drawBoard(canvas, view, scene, dragging, dragPixel);
  renderScores();
  const flash = takeFlash(view);
  if (flash) {
    flashBox.textContent = flash;
    flashBox.classList.add("visible");
    setTimeout(() => flashBox.classList.remove("visible"), 1800);
  }
  readyBtn.disabled = view.phase !== "playing";
}

function renderChat(): void {
  chatLog.innerHTML = "";
  for (const line of view.chat) {
    const div = document.createElement("div");
    div.className = line.own ? "chat-line own" : "chat-line partner";
    div.textContent = `${line.own ? "you" : "partner"}: ${line.text}`;
    chatLog.appendChild(div);
  }
  chatLog.scrollTop = chatLog.scrollHeight;
}

function renderScores(): void {
  const parts = view.results.map(
    (r) =>
      `round ${r.round}: <b>${r.score.toFixed(1)}</b>` +
      (r.bonus ? ' <span class="bonus">★ bonus</span>' : ""),
  );
  scorePane.innerHTML = parts.join(" · ");
}

async function loadScene(sceneId: string): Promise<void> {
  const resp = await fetch(`/scenes/${sceneId}`);
  if (resp.ok) {
    scene = (await resp.json()) as SceneGeometry;
  }
  redraw();
}

function onFrame(frame: Parameters<typeof applyFrame>[1]): void {
  const prevScene = view.sceneId;
  applyFrame(view, frame);
  if (frame.type === "chat") renderChat();
  if (frame.type === "round_start" && view.sceneId !== prevScene && view.sceneId) {
    void loadScene(view.sceneId);
  }
  redraw();
}

$<HTMLFormElement>("join-form").addEventListener("submit", (ev) => {
  ev.preventDefault();
  const room = $<HTMLInputElement>("room-input").value.trim() || "lobby";
  const name = $<HTMLInputElement>("name-input").value.trim() || "player";
  const proto = location.protocol === "https:" ? "wss" : "ws";
  socket = connect(`${proto}://${location.host}/ws`, onFrame, () => {
    if (view.phase !== "finished" && view.phase !== "aborted") {
      view.banner = "connection lost";
      redraw();
    }
  });
  socket.send({ type: "join", room, name });
  joinPane.hidden = true;
  gamePane.hidden = false;
  view.banner = "joining…";
  redraw();
});

chatForm.addEventListener("submit", (ev) => {
  ev.preventDefault();
  const text = chatInput.value.trim();
  if (text && socket) {
    socket.send({ type: "chat", text });
    chatInput.value = "";
  }
});

readyBtn.addEventListener("click", () => {
  socket?.send({ type: "ready" });
  readyBtn.disabled = true;
});

function canvasPixel(ev: PointerEvent): { x: number; y: number } {
  const rect = canvas.getBoundingClientRect();
  return {
    x: ((ev.clientX - rect.left) * canvas.width) / rect.width,
    y: ((ev.clientY - rect.top) * canvas.height) / rect.height,
  };
}

canvas.addEventListener("pointerdown", (ev) => {
  if (view.phase !== "playing" || !scene) return;
  const pixel = canvasPixel(ev);
  dragging = hitTest(pixel, view, scene, canvas.width, canvas.height);
  if (dragging) {
    dragPixel = pixel;
    canvas.setPointerCapture(ev.pointerId);
    redraw();
  }
});

canvas.addEventListener("pointermove", (ev) => {
  if (!dragging) return;
  dragPixel = canvasPixel(ev);
  redraw();
});

canvas.addEventListener("pointerup", (ev) => {
  if (!dragging || !scene) return;
  const pixel = canvasPixel(ev);
  const target = clampToBoard(pixelToGrid(pixel, scene, canvas.width, canvas.height), scene);
  const frame = submitMove(view, dragging, target);
  if (frame && socket) socket.send(frame);
  dragging = null;
  dragPixel = null;
  canvas.releasePointerCapture(ev.pointerId);
  redraw();
});

redraw();
