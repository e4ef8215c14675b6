"""Append-only per-room event logs: line-delimited JSON, one file per room.

The log is the source of truth for a game: `replay` rebuilds the final
GameState from it, and `load_transcripts` extracts the per-round chat for
analysis.  Every line parses independently, so a truncated file is simply a
valid prefix (a mid-game state).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

KINDS = (
    "join",
    "chat",
    "move_ok",
    "move_rejected",
    "ready",
    "round_start",
    "round_end",
    "game_end",
)


class SequenceGapError(ValueError):
    """A record's seq does not follow the previous one."""


class MalformedLogError(ValueError):
    def __init__(self, seq: int, detail: str):
        super().__init__(f"log record {seq}: {detail}")
        self.seq = seq


@dataclass(frozen=True)
class LogRecord:
    seq: int
    ts_ms: int
    room_id: str
    actor: str  # player id, or "server"
    kind: str
    payload: dict

    def to_json(self) -> str:
        return json.dumps(
            {
                "seq": self.seq,
                "ts_ms": self.ts_ms,
                "room_id": self.room_id,
                "actor": self.actor,
                "kind": self.kind,
                "payload": self.payload,
            },
            separators=(",", ":"),
        )

    @classmethod
    def from_json(cls, line: str) -> "LogRecord":
        doc = json.loads(line)
        rec = cls(
            seq=doc["seq"],
            ts_ms=doc["ts_ms"],
            room_id=doc["room_id"],
            actor=doc["actor"],
            kind=doc["kind"],
            payload=doc["payload"],
        )
        if rec.kind not in KINDS:
            raise ValueError(f"unknown kind {rec.kind!r}")
        if rec.payload.get("type") != rec.kind:
            raise ValueError(
                f"kind {rec.kind!r} does not match payload type "
                f"{rec.payload.get('type')!r}"
            )
        return rec


class EventLogWriter:
    """Durable append-only writer for one room; rejects seq gaps."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self._fh = open(self.path, "a", encoding="utf-8")
        self._last_seq = 0

    def append_event(self, rec: LogRecord) -> None:
        if rec.seq != self._last_seq + 1:
            raise SequenceGapError(
                f"expected seq {self._last_seq + 1}, got {rec.seq}"
            )
        self._fh.write(rec.to_json() + "\n")
        self._fh.flush()
        self._last_seq = rec.seq

    def close(self) -> None:
        self._fh.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()


def read_records(path: str | Path) -> list[LogRecord]:
    records = []
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                records.append(LogRecord.from_json(line))
            except (json.JSONDecodeError, KeyError, ValueError) as exc:
                raise MalformedLogError(line_no, str(exc)) from exc
    return records


def write_records(path: str | Path, records: Iterable[LogRecord]) -> None:
    with EventLogWriter(path) as writer:
        for rec in records:
            writer.append_event(rec)


def replay(source, scenes=None):
    """Rebuild the final GameState from a log file or a record list.

    An empty log yields a fresh waiting-phase state; a truncated log yields
    the corresponding mid-game state.
    """
    from .session import GameState, apply_record
    from .scenes import default_scenes

    records = read_records(source) if isinstance(source, (str, Path)) else list(source)
    scenes = scenes if scenes is not None else default_scenes()
    room_id = records[0].room_id if records else ""
    state = GameState(room_id=room_id)
    for rec in records:
        apply_record(state, rec, scenes)
    return state


def load_transcripts(source):
    """Extract one Transcript per started round, chat only, order preserved."""
    from .analysis import Transcript
    from .session import ChatMessage

    records = read_records(source) if isinstance(source, (str, Path)) else list(source)
    player_ids: list[str] = []
    transcripts: list[Transcript] = []
    current_round = 0
    for rec in records:
        if rec.kind == "join":
            player_ids.append(rec.actor)
        elif rec.kind == "round_start" and rec.payload["round"] != current_round:
            current_round = rec.payload["round"]
            transcripts.append(
                Transcript(round=current_round, messages=[], player_ids=tuple(player_ids))
            )
        elif rec.kind == "chat":
            transcripts[-1].messages.append(
                ChatMessage(rec.actor, rec.payload["text"], rec.payload["ts"], current_round)
            )
    return transcripts
