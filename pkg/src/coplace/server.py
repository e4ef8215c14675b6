"""WebSocket game server: rooms, frame routing, per-room event logs.

Every frame in either direction is a single JSON object with a "type" field.
Each room is serialized behind its own lock, so events within a room apply
in one total order while distinct rooms proceed concurrently.  The browser
client bundle, when built, is served under /app.
"""

from __future__ import annotations

import asyncio
import logging
from pathlib import Path

from fastapi import FastAPI, WebSocket, WebSocketDisconnect
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .eventlog import EventLogWriter
from .game import Scene
from .scenes import default_scenes, load_scenes, scene_to_doc
from .session import FINISHED, Room, derive_seed

logger = logging.getLogger("coplace.server")


class RoomRuntime:
    def __init__(self, room: Room, writer: EventLogWriter | None):
        self.room = room
        self.writer = writer
        self.sockets: dict[str, WebSocket] = {}
        self.lock = asyncio.Lock()


def create_app(
    scenes: dict[str, Scene] | None = None,
    log_dir: str | Path | None = None,
    seed: int = 0,
    app_dir: str | Path | None = None,
) -> FastAPI:
    scenes = scenes if scenes is not None else default_scenes()
    app = FastAPI(title="coplace")
    rooms: dict[str, RoomRuntime] = {}
    app.state.rooms = rooms

    def get_room(room_id: str) -> RoomRuntime:
        if room_id not in rooms:
            writer = None
            if log_dir is not None:
                writer = EventLogWriter(Path(log_dir) / f"{room_id}.log")
            room = Room(
                room_id,
                scenes=scenes,
                seed=derive_seed(seed, room_id),
                sink=writer.append_event if writer else None,
            )
            rooms[room_id] = RoomRuntime(room, writer)
        return rooms[room_id]

    async def dispatch(runtime: RoomRuntime, emissions, requester: WebSocket):
        for recipient, frame in emissions:
            ws = requester if recipient is None else runtime.sockets.get(recipient)
            if ws is None:
                continue
            try:
                await ws.send_json(frame)
            except Exception:  # peer vanished; its disconnect handler follows
                logger.debug("send to %s failed", recipient)

    @app.get("/")
    async def index():
        return JSONResponse(
            {"service": "coplace", "websocket": "/ws", "scenes": "/scenes"}
        )

    @app.get("/scenes")
    async def list_scenes():
        return JSONResponse([scene_to_doc(s) for s in scenes.values()])

    @app.get("/scenes/{scene_id}")
    async def get_scene(scene_id: str):
        if scene_id not in scenes:
            return JSONResponse({"error": "unknown scene"}, status_code=404)
        return JSONResponse(scene_to_doc(scenes[scene_id]))

    @app.websocket("/ws")
    async def ws_endpoint(ws: WebSocket):
        await ws.accept()
        runtime: RoomRuntime | None = None
        player_id: str | None = None
        try:
            while True:
                frame = await ws.receive_json()
                kind = frame.get("type")
                if player_id is None:
                    if kind != "join":
                        await ws.send_json(
                            {"type": "error", "code": "not_joined",
                             "message": "send a join frame first"}
                        )
                        continue
                    room_id = str(frame.get("room") or "lobby")
                    name = str(frame.get("name") or "anon")
                    candidate = get_room(room_id)
                    async with candidate.lock:
                        pid, emissions = candidate.room.handle_join(name)
                        if pid is not None:
                            player_id = pid
                            runtime = candidate
                            runtime.sockets[pid] = ws
                        await dispatch(candidate, emissions, ws)
                    continue
                async with runtime.lock:
                    if kind == "chat":
                        emissions = runtime.room.handle_chat(
                            player_id, str(frame.get("text", ""))
                        )
                    elif kind == "move":
                        try:
                            emissions = runtime.room.handle_move(
                                player_id,
                                str(frame["object"]),
                                int(frame["x"]),
                                int(frame["y"]),
                            )
                        except (KeyError, TypeError, ValueError):
                            emissions = [(player_id, {
                                "type": "error", "code": "bad_frame",
                                "message": "move needs object, x, y",
                            })]
                    elif kind == "ready":
                        emissions = runtime.room.handle_ready(player_id)
                    else:
                        emissions = [(player_id, {
                            "type": "error", "code": "bad_frame",
                            "message": f"unknown frame type {kind!r}",
                        })]
                    await dispatch(runtime, emissions, ws)
        except WebSocketDisconnect:
            pass
        finally:
            if runtime is not None and player_id is not None:
                async with runtime.lock:
                    runtime.sockets.pop(player_id, None)
                    emissions = runtime.room.handle_disconnect(player_id)
                    await dispatch(runtime, emissions, ws)
                    if runtime.room.state.phase == FINISHED and not runtime.sockets:
                        if runtime.writer is not None:
                            runtime.writer.close()
                            runtime.writer = None

    if app_dir is not None and Path(app_dir).is_dir():
        app.mount("/app", StaticFiles(directory=app_dir, html=True), name="app")

    return app


def serve(
    host: str = "127.0.0.1",
    port: int = 8000,
    scenes_path: str | None = None,
    log_dir: str | None = None,
    seed: int = 0,
    app_dir: str | None = None,
) -> None:
    import uvicorn

    scenes = load_scenes(scenes_path) if scenes_path else default_scenes()
    app = create_app(scenes=scenes, log_dir=log_dir, seed=seed, app_dir=app_dir)
    logger.info("serving on %s:%d", host, port)
    uvicorn.run(app, host=host, port=port)
