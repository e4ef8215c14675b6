"""In-process self-play: scripted policies playing full games over the room
protocol, for end-to-end tests and strategy-pattern experiments.

Policies act only through legal client frames and see only the frames the
server would deliver to their own slot.  All randomness is seeded, the room
clock is a logical counter, and player ids and seeds are derived
deterministically, so a rerun of the same matchup produces a byte-identical
event log.

Scripts speak a controlled instruction language ("put the <object>
<direction> the <landmark>") that the rule parser understands, which keeps
end-to-end games oracle-checkable: a leader can dictate an exact target
configuration and verify the round scores 100.
"""

from __future__ import annotations

import random
import re
from collections import deque
from dataclasses import dataclass, field

from .agent import (
    DIRECTION_PHRASES,
    Agent,
    LANDMARK_SYNONYMS,
    RuleParser,
    TARGET_SYNONYMS,
    resolve_position,
    vocabulary_for_scene,
)
from .analysis import GameStats, ReportTable, Transcript, report
from .eventlog import LogRecord, load_transcripts
from .game import OK, Board, Point, Scene, validate_placement
from .scenes import default_scenes
from .session import FINISHED, GameState, Room

IDLE_LIMIT = 50  # idle polls before a stalled game is aborted
MAX_ACTIONS = 20_000
MAX_INSTRUCTION_PASSES = 8

_CONFIRM_ADJUSTED = re.compile(r"\bnudged\b")
_CONFIRM_FAILED = re.compile(r"\bblocked\b|\bcouldn't\b|\brephrase\b")


def instruction_text(target: str, direction: str, landmark: str) -> str:
    return f"put the {target} {DIRECTION_PHRASES[direction]} the {landmark}"


def slot_assignment(scene: Scene) -> dict[str, tuple[str, str, Point]]:
    """Deterministic shared target layout: the i-th object (sorted) goes next
    to the i-th landmark (sorted).  Both players can compute this from the
    scene alone, with no coordination."""
    objects = sorted(scene.objects)
    landmarks = sorted(scene.landmarks)[: len(objects)]
    return {
        obj: (lm, "next_to", resolve_position(scene.landmarks[lm], "next_to"))
        for obj, lm in zip(objects, landmarks)
    }


def settle_moves(
    scene: Scene,
    board: Board,
    targets: dict[str, Point],
    max_passes: int = 20,
) -> list[tuple[str, Point]]:
    """Move sequence that drives `board` exactly onto `targets`.

    Runs passes of greedy moves; when a pass makes no progress (objects
    blocking each other's targets), the first stuck object is parked on a
    free cell away from every target, which always unblocks the next pass.
    """
    moves: list[tuple[str, Point]] = []
    for _ in range(max_passes):
        pending = [o for o, p in targets.items() if board.get(o) != p]
        if not pending:
            return moves
        progressed = False
        for obj in pending:
            if validate_placement(scene, board, obj, targets[obj]) == OK:
                board = board.with_placement(obj, targets[obj])
                moves.append((obj, targets[obj]))
                progressed = True
        if not progressed:
            obj = pending[0]
            spot = _parking_spot(scene, board, obj, targets)
            board = board.with_placement(obj, spot)
            moves.append((obj, spot))
    raise RuntimeError("board did not settle onto targets")


def _parking_spot(
    scene: Scene, board: Board, obj: str, targets: dict[str, Point]
) -> Point:
    e = scene.object_extent
    lo = (e + 1) // 2
    for y in range(lo, (2 * scene.height - e) // 2 + 1, e):
        for x in range(lo, (2 * scene.width - e) // 2 + 1, e):
            p = Point(x, y)
            if any(abs(p.x - t.x) < e and abs(p.y - t.y) < e for t in targets.values()):
                continue
            if validate_placement(scene, board, obj, p) == OK:
                return p
    raise RuntimeError(f"no parking spot for {obj!r}")


# -- policies ------------------------------------------------------------------


class Policy:
    """A scripted player: a step function from observed frames to actions."""

    policy_id = "base"

    def __init__(self):
        self.player_index: int | None = None
        self.player_id: str | None = None

    def bind(self, player_index: int) -> None:
        self.player_index = player_index

    def on_frame(self, frame: dict) -> list[dict]:
        if frame.get("type") == "joined":
            self.player_id = frame["player_id"]
        return []

    def idle(self) -> list[dict]:
        return []

    # shared helpers
    def _chat(self, text: str) -> dict:
        return {"type": "chat", "text": text}

    def _move(self, obj: str, p: Point) -> dict:
        return {"type": "move", "object": obj, "x": p.x, "y": p.y}


class LeaderScript(Policy):
    """Dictates one placement per object, re-issuing any instruction the
    partner could not execute exactly, then calls the round."""

    policy_id = "leader"

    def __init__(self, scenes: dict[str, Scene] | None = None):
        super().__init__()
        self.scenes = scenes if scenes is not None else default_scenes()
        self._reset()

    def _reset(self):
        self.scene = None
        self.assignment = {}
        self.queue: deque[str] = deque()
        self.retry: list[str] = []
        self.in_flight: str | None = None
        self.passes = 0
        self.finishing = False

    def on_frame(self, frame: dict) -> list[dict]:
        super().on_frame(frame)
        kind = frame.get("type")
        if kind == "round_start":
            return self._on_round_start(frame)
        if kind == "chat" and frame.get("from") != self.player_id:
            return self._on_reply(frame["text"])
        return []

    def _on_round_start(self, frame: dict) -> list[dict]:
        self._reset()
        self.scene = self.scenes[frame["scene"]]
        self.assignment = slot_assignment(self.scene)
        board = Board({e["object"]: Point(e["x"], e["y"]) for e in frame["placements"]})
        targets = {o: pos for o, (_, _, pos) in self.assignment.items()}
        actions = [self._move(o, p) for o, p in settle_moves(self.scene, board, targets)]
        self.queue = deque(sorted(self.assignment))
        actions.append(self._next_instruction())
        return actions

    def _render_instruction(self, obj: str) -> str:
        landmark, direction, _ = self.assignment[obj]
        return instruction_text(obj, direction, landmark)

    def _next_instruction(self) -> dict:
        self.in_flight = self.queue.popleft()
        return self._chat(self._render_instruction(self.in_flight))

    def _on_reply(self, text: str) -> list[dict]:
        if self.finishing or self.in_flight is None:
            return []
        low = text.lower()
        if _CONFIRM_ADJUSTED.search(low) or _CONFIRM_FAILED.search(low):
            self.retry.append(self.in_flight)
        elif low.startswith("ok"):
            pass  # placed exactly
        else:
            return []  # opener or other small talk; keep waiting
        self.in_flight = None
        if not self.queue:
            if self.retry and self.passes < MAX_INSTRUCTION_PASSES:
                self.passes += 1
                self.queue = deque(self.retry)
                self.retry = []
            else:
                self.finishing = True
                return [self._chat("all set. ready?"), {"type": "ready"}]
        return [self._next_instruction()]


class FollowerScript(Policy):
    """Obeys instructions in the controlled language on its own board,
    answering with terse confirmations."""

    policy_id = "follower"

    def __init__(self, scenes: dict[str, Scene] | None = None):
        super().__init__()
        self.scenes = scenes if scenes is not None else default_scenes()
        self.scene = None
        self.board = None
        self.parser = None

    def on_frame(self, frame: dict) -> list[dict]:
        super().on_frame(frame)
        kind = frame.get("type")
        if kind == "round_start":
            self.scene = self.scenes[frame["scene"]]
            self.board = Board(
                {e["object"]: Point(e["x"], e["y"]) for e in frame["placements"]}
            )
            self.parser = RuleParser(vocabulary_for_scene(self.scene))
            return []
        if kind == "chat" and frame.get("from") != self.player_id:
            return self._on_message(frame["text"])
        return []

    def _on_message(self, text: str) -> list[dict]:
        if self.parser.is_instruction(text):
            target, landmark = self.parser.extract_target_landmark(text)
            direction = self.parser.extract_direction(text)
            center = self.scene.landmarks[landmark]
            nominal = resolve_position(center, direction)
            for mult in (1, 2, 4):
                p = resolve_position(center, direction, 10 * mult)
                if validate_placement(self.scene, self.board, target, p) == OK:
                    self.board = self.board.with_placement(target, p)
                    note = "" if p == nominal else ", nudged"
                    return [self._move(target, p), self._chat(f"ok{note}")]
            return [self._chat("blocked, pick another spot")]
        if re.search(r"\bready\b|\bdone\b", text.lower()):
            return [self._chat("ready"), {"type": "ready"}]
        return []


class AlternatingScript(Policy):
    """Back-and-forth play: the two sides take turns proposing the next
    object's placement; each applies the agreed layout to its own board."""

    policy_id = "alternating"

    def __init__(self, scenes: dict[str, Scene] | None = None):
        super().__init__()
        self.scenes = scenes if scenes is not None else default_scenes()
        self._reset()

    def _reset(self):
        self.scene = None
        self.board = None
        self.parser = None
        self.objects: list[str] = []
        self.assignment = {}
        self.agreed: dict[str, Point] = {}
        self.proposed: str | None = None
        self.done = False  # guards against round-crossing ready echoes

    def on_frame(self, frame: dict) -> list[dict]:
        super().on_frame(frame)
        kind = frame.get("type")
        if kind == "round_start":
            return self._on_round_start(frame)
        if kind == "chat" and frame.get("from") != self.player_id:
            return self._on_message(frame["text"])
        return []

    def _on_round_start(self, frame: dict) -> list[dict]:
        self._reset()
        self.scene = self.scenes[frame["scene"]]
        self.board = Board(
            {e["object"]: Point(e["x"], e["y"]) for e in frame["placements"]}
        )
        self.parser = RuleParser(vocabulary_for_scene(self.scene))
        self.assignment = slot_assignment(self.scene)
        self.objects = sorted(self.assignment)
        if self.player_index == 0:
            return [self._propose()]
        return []

    def _propose(self) -> dict:
        obj = self.objects[len(self.agreed)]
        landmark, direction, pos = self.assignment[obj]
        self.proposed = obj
        self.agreed[obj] = pos
        return self._chat(instruction_text(obj, direction, landmark))

    def _on_message(self, text: str) -> list[dict]:
        if self.done:
            return []
        low = text.lower()
        if self.parser.is_instruction(text):
            target, landmark = self.parser.extract_target_landmark(text)
            direction = self.parser.extract_direction(text)
            self.agreed[target] = resolve_position(self.scene.landmarks[landmark], direction)
            if len(self.agreed) < len(self.objects):
                return [self._chat("ok"), self._propose()]
            return [self._chat("ok")] + self._finish()
        if low.startswith("ok") and self.proposed is not None:
            self.proposed = None
            if len(self.agreed) == len(self.objects):
                return self._finish()
            return []
        if re.search(r"\bready\b", low):
            self.done = True
            return [self._chat("ready"), {"type": "ready"}]
        return []

    def _finish(self) -> list[dict]:
        moves = [
            self._move(o, p)
            for o, p in settle_moves(self.scene, self.board, self.agreed)
        ]
        if self.player_index == 0:
            self.done = True
            return moves + [self._chat("all set. ready?"), {"type": "ready"}]
        return moves


class _RoundSwitchScript(Policy):
    """Delegates to a different script per round (strategy transitions)."""

    def __init__(self, scenes: dict[str, Scene] | None = None):
        super().__init__()
        self.scenes = scenes if scenes is not None else default_scenes()
        self.delegate: Policy | None = None

    def _script_for_round(self, round_index: int) -> Policy:
        raise NotImplementedError

    def on_frame(self, frame: dict) -> list[dict]:
        super().on_frame(frame)
        if frame.get("type") == "round_start":
            self.delegate = self._script_for_round(frame["round"])
            self.delegate.player_index = self.player_index
            self.delegate.player_id = self.player_id
        if self.delegate is None:
            return []
        return self.delegate.on_frame(frame)


class GripTighteningScript(_RoundSwitchScript):
    """Balanced first round, leader-led second round."""

    policy_id = "grip-tightening"

    def _script_for_round(self, round_index: int) -> Policy:
        if round_index == 1:
            return AlternatingScript(self.scenes)
        return LeaderScript(self.scenes) if self.player_index == 0 else FollowerScript(self.scenes)


class GripLooseningScript(_RoundSwitchScript):
    """Leader-led first round, balanced second round."""

    policy_id = "grip-loosening"

    def _script_for_round(self, round_index: int) -> Policy:
        if round_index == 2:
            return AlternatingScript(self.scenes)
        return LeaderScript(self.scenes) if self.player_index == 0 else FollowerScript(self.scenes)


class BaselineAgentPolicy(Policy):
    """The reactive instruction-following agent in a policy slot."""

    def __init__(self, scenes: dict[str, Scene] | None = None, parser_kind: str = "rule"):
        super().__init__()
        self.agent = Agent(scenes=scenes, parser_kind=parser_kind)
        self.policy_id = f"agent-{parser_kind}"

    def on_frame(self, frame: dict) -> list[dict]:
        super().on_frame(frame)
        return self.agent.on_frame(frame)


class NoisyLeaderScript(LeaderScript):
    """Leader that paraphrases instruction terms at a given rate: synonyms
    from the shared table, or out-of-vocabulary words when `oov` is set."""

    policy_id = "noisy-leader"

    def __init__(
        self,
        noise_rate: float,
        seed: int,
        oov: bool = False,
        scenes: dict[str, Scene] | None = None,
    ):
        super().__init__(scenes)
        if not 0.0 <= noise_rate <= 1.0:
            raise ValueError("noise_rate must be in [0, 1]")
        self.noise_rate = noise_rate
        self.oov = oov
        self.rng = random.Random(seed)
        self._target_paraphrases = _invert_synonyms(TARGET_SYNONYMS)
        self._landmark_paraphrases = _invert_synonyms(LANDMARK_SYNONYMS)

    def _substitute(self, term: str, pool: dict[str, list[str]]) -> str:
        if self.noise_rate == 0.0 or self.rng.random() >= self.noise_rate:
            return term
        if self.oov:
            return self.rng.choice(("flurb", "wozzle", "greeble"))
        choices = pool.get(term)
        if not choices:
            return term
        return self.rng.choice(choices)

    def _render_instruction(self, obj: str) -> str:
        landmark, direction, _ = self.assignment[obj]
        return instruction_text(
            self._substitute(obj, self._target_paraphrases),
            direction,
            self._substitute(landmark, self._landmark_paraphrases),
        )


def _invert_synonyms(table: dict[str, str]) -> dict[str, list[str]]:
    inverted: dict[str, list[str]] = {}
    for phrase, canonical in table.items():
        inverted.setdefault(canonical, []).append(phrase)
    return inverted


def noisy_leader(noise_rate: float, seed: int, oov: bool = False) -> NoisyLeaderScript:
    """LeaderScript variant that paraphrases its instructions (stress harness
    for the agent's synonym handling and clarification loop)."""
    return NoisyLeaderScript(noise_rate, seed, oov=oov)


# -- game runner ---------------------------------------------------------------


@dataclass
class GameRecord:
    seed: int
    room_id: str
    policy_ids: tuple[str, str]
    player_ids: tuple[str, str]
    scores: list[tuple[float, bool]]
    transcripts: list[Transcript]
    records: list[LogRecord]
    final_state: GameState
    outbound: dict[str, list[dict]] = field(default_factory=dict)
    aborted: bool = False

    def log_text(self) -> str:
        return "".join(rec.to_json() + "\n" for rec in self.records)


def run_game(
    policy_a: Policy,
    policy_b: Policy,
    seed: int,
    scenes: dict[str, Scene] | None = None,
    room_id: str | None = None,
) -> GameRecord:
    """Play one full two-round game between two policies, in process.

    Deterministic for a fixed (policies, seed): the room clock is a logical
    counter and all board seeds derive from `seed`.
    """
    scenes = scenes if scenes is not None else default_scenes()
    room_id = room_id or f"{policy_a.policy_id}-vs-{policy_b.policy_id}-s{seed}"
    tick = iter(range(1, MAX_ACTIONS * 4))
    room = Room(room_id, scenes=scenes, seed=seed, clock=lambda: next(tick))

    policies: dict[str, Policy] = {}
    outbound: dict[str, list[dict]] = {}
    actions: deque[tuple[str, dict]] = deque()

    def deliver(emissions):
        for recipient, frame in emissions:
            assert recipient is not None, f"unroutable frame {frame}"
            # protocol-privacy assertion: placement-bearing frames only ever
            # reach the player whose board they describe (the frame object is
            # the record payload, so the record's actor identifies the owner)
            if "placements" in frame or frame.get("type", "").startswith("move"):
                owners = {r.actor for r in room.records if r.payload is frame}
                assert owners == {recipient}, "placement frame leaked to partner"
            outbound[recipient].append(frame)
            for act in policies[recipient].on_frame(frame):
                actions.append((recipient, act))

    for index, policy in enumerate((policy_a, policy_b)):
        policy.bind(index)
        pid, emissions = room.handle_join(f"{policy.policy_id}-{index}")
        assert pid is not None
        policies[pid] = policy
        outbound[pid] = []
        deliver(emissions)

    aborted = False
    steps = 0
    idle = 0
    while room.state.phase != FINISHED:
        if not actions:
            idle += 1
            if idle > IDLE_LIMIT:
                aborted = True
                break
            for pid, policy in policies.items():
                for act in policy.idle():
                    actions.append((pid, act))
            continue
        idle = 0
        steps += 1
        if steps > MAX_ACTIONS:
            aborted = True
            break
        pid, act = actions.popleft()
        kind = act.get("type")
        if kind == "chat":
            deliver(room.handle_chat(pid, act["text"]))
        elif kind == "move":
            deliver(room.handle_move(pid, act["object"], act["x"], act["y"]))
        elif kind == "ready":
            deliver(room.handle_ready(pid))
        else:
            raise ValueError(f"policy produced unknown action {act!r}")

    player_ids = tuple(room.state.player_ids())
    return GameRecord(
        seed=seed,
        room_id=room_id,
        policy_ids=(policy_a.policy_id, policy_b.policy_id),
        player_ids=player_ids,
        scores=[(float(s.value), s.bonus) for s in room.state.scores],
        transcripts=load_transcripts(room.records),
        records=room.records,
        final_state=room.state,
        outbound=outbound,
        aborted=aborted,
    )


# -- batch running -------------------------------------------------------------

POLICY_FACTORIES = {
    "leader": lambda seed, scenes: LeaderScript(scenes),
    "follower": lambda seed, scenes: FollowerScript(scenes),
    "alternating": lambda seed, scenes: AlternatingScript(scenes),
    "tightening": lambda seed, scenes: GripTighteningScript(scenes),
    "loosening": lambda seed, scenes: GripLooseningScript(scenes),
    "agent": lambda seed, scenes: BaselineAgentPolicy(scenes, parser_kind="rule"),
    "noisy": lambda seed, scenes: noisy_leader(1.0, seed),
}


def make_policy(name: str, seed: int, scenes: dict[str, Scene] | None = None) -> Policy:
    try:
        factory = POLICY_FACTORIES[name]
    except KeyError:
        raise ValueError(
            f"unknown policy {name!r}; available: {', '.join(sorted(POLICY_FACTORIES))}"
        ) from None
    return factory(seed, scenes)


@dataclass
class BatchConfig:
    matchups: list[str]  # "leader:follower" style
    seeds: list[int]
    theta: float = 1.3
    length_unit: str = "tokens"


def batch_run(
    config: BatchConfig, scenes: dict[str, Scene] | None = None
) -> tuple[list[GameRecord], ReportTable]:
    """Run every matchup on every seed and aggregate the strategy report."""
    if not config.matchups or not config.seeds:
        raise ValueError("batch needs at least one matchup and one seed")
    games: list[GameRecord] = []
    for matchup in config.matchups:
        name_a, _, name_b = matchup.partition(":")
        if not name_b:
            raise ValueError(f"matchup {matchup!r} must look like 'leader:follower'")
        for seed in config.seeds:
            record = run_game(
                make_policy(name_a, seed, scenes),
                make_policy(name_b, seed, scenes),
                seed,
                scenes=scenes,
            )
            games.append(record)
    stats = [
        GameStats(g.room_id, g.transcripts, g.scores) for g in games if not g.aborted
    ]
    table = report(stats, theta=config.theta, length_unit=config.length_unit)
    return games, table
