"""Room lifecycle and wire protocol.

A :class:`Room` is a serialized state machine: every client action is turned
into log records which are applied to the :class:`GameState` one at a time,
and the handler returns the frames to deliver.  Replay re-applies the same
records through the same ``apply`` path, so a replayed room is equal to the
live one field for field.

Wire frames are plain JSON objects with a ``"type"`` field; see the handler
docstrings for the shapes.  Board placements are only ever sent to the player
who owns them.
"""

from __future__ import annotations

import hashlib
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

from . import scenes as scenes_mod
from .eventlog import LogRecord
from .game import (
    OK,
    Board,
    Point,
    Scene,
    UnknownObjectError,
    mean_pair_distance,
    normalize_score,
    random_initial_placements,
    validate_placement,
)

WAITING = "waiting"
PLAYING = "playing"
ROUND_DONE = "round_done"
FINISHED = "finished"

TOTAL_ROUNDS = 2

# Emission recipient: a player id, or None for "the requesting connection"
# (used when a join is rejected before an id exists).
Emission = tuple[Optional[str], dict]


@dataclass
class PlayerSlot:
    player_id: str
    display_name: str
    connected: bool = True


@dataclass
class ChatMessage:
    sender: str
    text: str
    timestamp_ms: int
    round: int


@dataclass
class GameState:
    room_id: str
    players: list[PlayerSlot] = field(default_factory=list)
    round_index: int = 0  # 0 until the first round starts
    scene: Scene | None = None
    boards: dict[str, Board] = field(default_factory=dict)
    chat: list[ChatMessage] = field(default_factory=list)
    phase: str = WAITING
    ready_flags: dict[str, bool] = field(default_factory=dict)
    scores: list = field(default_factory=list)  # list[Score], one per finished round

    def player_ids(self) -> list[str]:
        return [p.player_id for p in self.players]

    def other_player(self, player_id: str) -> str | None:
        for p in self.players:
            if p.player_id != player_id:
                return p.player_id
        return None


def derive_seed(*parts) -> int:
    """Stable cross-run seed derivation (Python's hash() is salted)."""
    digest = hashlib.sha256(":".join(str(p) for p in parts).encode()).digest()
    return int.from_bytes(digest[:8], "big")


def _error(code: str, message: str) -> dict:
    return {"type": "error", "code": code, "message": message}


class Room:
    """One game room: two players, two rounds, a totally ordered event log.

    ``sink`` receives every log record as it is created (the server wires a
    file writer here); ``clock`` supplies timestamps in ms and is injectable
    so harness runs produce byte-identical logs.
    """

    def __init__(
        self,
        room_id: str,
        scenes: dict[str, Scene] | None = None,
        seed: int = 0,
        clock: Callable[[], int] | None = None,
        sink: Callable[[LogRecord], None] | None = None,
    ):
        self.scenes = scenes if scenes is not None else scenes_mod.default_scenes()
        for sid in scenes_mod.ROUND_SCENES:
            if sid not in self.scenes:
                raise ValueError(f"scene config is missing required scene {sid!r}")
        self.state = GameState(room_id=room_id)
        self.seed = seed
        self.clock = clock if clock is not None else (lambda: int(time.time() * 1000))
        self.sink = sink
        self.records: list[LogRecord] = []
        self._next_seq = 1

    # -- record plumbing ---------------------------------------------------

    def _record(self, actor: str, kind: str, payload: dict) -> LogRecord:
        rec = LogRecord(
            seq=self._next_seq,
            ts_ms=self.clock(),
            room_id=self.state.room_id,
            actor=actor,
            kind=kind,
            payload=payload,
        )
        self._next_seq += 1
        self.records.append(rec)
        apply_record(self.state, rec, self.scenes)
        if self.sink is not None:
            self.sink(rec)
        return rec

    # -- handlers ------------------------------------------------------------

    def handle_join(self, name: str) -> tuple[str | None, list[Emission]]:
        """Add a player.  Inbound frame: {"type":"join","room":..,"name":..}.

        The joiner gets {"type":"joined","player_id":..}; when the second
        player arrives the round starts and each player receives a
        round_start frame holding only their own placements.
        """
        st = self.state
        if st.phase != WAITING or len(st.players) >= 2:
            return None, [(None, _error("room_full", "room already has two players"))]
        player_id = f"p{len(st.players) + 1}"
        self._record(
            player_id,
            "join",
            {"type": "join", "room": st.room_id, "name": name},
        )
        out: list[Emission] = [(player_id, {"type": "joined", "player_id": player_id})]
        if len(st.players) == 2:
            out.extend(self._start_round(1))
        return player_id, out

    def handle_chat(self, sender: str, text: str) -> list[Emission]:
        """Relay a chat line to both players: {"type":"chat","text":..}."""
        st = self.state
        if st.phase != PLAYING:
            return [(sender, _error("not_playing", "chat is only open during a round"))]
        if not text.strip():
            return [(sender, _error("empty_chat", "message is empty"))]
        frame = {"type": "chat", "from": sender, "text": text, "ts": self.clock()}
        self._record(sender, "chat", frame)
        return [(pid, frame) for pid in st.player_ids()]

    def handle_move(self, sender: str, obj: str, x: int, y: int) -> list[Emission]:
        """Apply a private move: {"type":"move","object":..,"x":..,"y":..}.

        The outcome goes to the sender only; the partner never learns about
        it.  Invalid moves produce move_rejected with the violated rule.
        """
        st = self.state
        if st.phase != PLAYING:
            return [(sender, _error("not_playing", "moves are only allowed during a round"))]
        try:
            verdict = validate_placement(
                st.scene, st.boards[sender], obj, Point(x, y)
            )
        except UnknownObjectError:
            return [(sender, _error("unknown_object", f"no object named {obj!r}"))]
        if verdict == OK:
            frame = {"type": "move_ok", "object": obj, "x": x, "y": y}
            self._record(sender, "move_ok", frame)
        else:
            frame = {"type": "move_rejected", "object": obj, "reason": verdict}
            self._record(sender, "move_rejected", frame)
        return [(sender, frame)]

    def handle_ready(self, sender: str) -> list[Emission]:
        """Flag the sender as done; when both players are, the round ends.

        Emits round_end {"round","score","bonus"} to both, then either starts
        round 2 or finishes the game with game_end {"scores":[..]}.
        """
        st = self.state
        if st.phase != PLAYING:
            return [(sender, _error("not_playing", "cannot ready up outside a round"))]
        self._record(sender, "ready", {"type": "ready"})
        if not all(st.ready_flags.get(pid) for pid in st.player_ids()):
            return []
        ended_round = st.round_index
        out = self._end_round()
        if ended_round < TOTAL_ROUNDS:
            out.extend(self._start_round(ended_round + 1))
        else:
            out.extend(self._end_game())
        return out

    def handle_disconnect(self, player_id: str) -> list[Emission]:
        """A player's connection dropped.

        Mid-round this aborts the game (the joint task is unscoreable solo):
        a game_end carrying only the completed rounds' scores goes to the
        partner.  In the waiting phase the slot is simply freed.
        """
        st = self.state
        if st.phase == WAITING:
            st.players = [p for p in st.players if p.player_id != player_id]
            return []
        if st.phase == FINISHED:
            return []
        frame = {
            "type": "game_end",
            "scores": [float(s.value) for s in st.scores],
            "reason": "disconnect",
        }
        self._record(player_id, "game_end", frame)
        other = st.other_player(player_id)
        return [(other, frame)] if other else []

    # -- internals ---------------------------------------------------------

    def _start_round(self, round_index: int) -> list[Emission]:
        scene = self.scenes[scenes_mod.ROUND_SCENES[round_index - 1]]
        out: list[Emission] = []
        for idx, pid in enumerate(self.state.player_ids()):
            board = random_initial_placements(
                scene, derive_seed(self.seed, round_index, idx)
            )
            frame = {
                "type": "round_start",
                "round": round_index,
                "scene": scene.scene_id,
                "placements": [
                    {"object": o, "x": p.x, "y": p.y}
                    for o, p in board.placements.items()
                ],
            }
            self._record(pid, "round_start", frame)
            out.append((pid, frame))
        return out

    def _end_round(self) -> list[Emission]:
        st = self.state
        a, b = st.player_ids()
        score = normalize_score(
            mean_pair_distance(st.boards[a], st.boards[b]), st.scene
        )
        frame = {
            "type": "round_end",
            "round": st.round_index,
            "score": float(score.value),
            "bonus": score.bonus,
        }
        self._record("server", "round_end", frame)
        return [(pid, frame) for pid in st.player_ids()]

    def _end_game(self) -> list[Emission]:
        st = self.state
        frame = {"type": "game_end", "scores": [float(s.value) for s in st.scores]}
        self._record("server", "game_end", frame)
        return [(pid, frame) for pid in st.player_ids()]


def apply_record(state: GameState, rec: LogRecord, scenes: dict[str, Scene]) -> None:
    """Apply one log record to the state.  Shared by live rooms and replay."""
    kind, payload = rec.kind, rec.payload
    if kind == "join":
        state.players.append(PlayerSlot(rec.actor, payload["name"]))
    elif kind == "round_start":
        if payload["round"] != state.round_index:
            state.round_index = payload["round"]
            state.scene = scenes[payload["scene"]]
            state.phase = PLAYING
            state.ready_flags = {pid: False for pid in state.player_ids()}
        state.boards[rec.actor] = Board(
            {e["object"]: Point(e["x"], e["y"]) for e in payload["placements"]}
        )
    elif kind == "chat":
        state.chat.append(
            ChatMessage(rec.actor, payload["text"], payload["ts"], state.round_index)
        )
    elif kind == "move_ok":
        board = state.boards[rec.actor]
        p = Point(payload["x"], payload["y"])
        verdict = validate_placement(state.scene, board, payload["object"], p)
        if verdict != OK:
            raise ValueError(f"record seq {rec.seq}: logged move_ok is invalid ({verdict})")
        state.boards[rec.actor] = board.with_placement(payload["object"], p)
    elif kind == "move_rejected":
        pass  # logged for analysis, never mutates a board
    elif kind == "ready":
        state.ready_flags[rec.actor] = True
    elif kind == "round_end":
        a, b = state.player_ids()
        score = normalize_score(
            mean_pair_distance(state.boards[a], state.boards[b]), state.scene
        )
        state.scores.append(score)
        state.phase = ROUND_DONE
    elif kind == "game_end":
        state.phase = FINISHED
        if payload.get("reason") == "disconnect":
            for p in state.players:
                if p.player_id == rec.actor:
                    p.connected = False
    else:
        raise ValueError(f"record seq {rec.seq}: unknown kind {kind!r}")
