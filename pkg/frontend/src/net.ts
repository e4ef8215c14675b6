/** Thin WebSocket wrapper delivering parsed frames in arrival order. */

import type { ClientFrame, ServerFrame } from "./protocol.js";
import { parseServerFrame } from "./protocol.js";

export interface GameSocket {
  send(frame: ClientFrame): void;
  close(): void;
}

export function connect(
  url: string,
  onFrame: (frame: ServerFrame) => void,
  onClose: () => void,
): GameSocket {
  const ws = new WebSocket(url);
  ws.addEventListener("message", (ev) => {
    const frame = parseServerFrame(String(ev.data));
    if (frame) onFrame(frame);
  });
  ws.addEventListener("close", onClose);
  const queue: ClientFrame[] = [];
  ws.addEventListener("open", () => {
    for (const frame of queue.splice(0)) ws.send(JSON.stringify(frame));
  });
  return {
    send(frame: ClientFrame) {
      if (ws.readyState === WebSocket.OPEN) {
        ws.send(JSON.stringify(frame));
      } else if (ws.readyState === WebSocket.CONNECTING) {
        queue.push(frame);
      }
    },
    close() {
      ws.close();
    },
  };
}
