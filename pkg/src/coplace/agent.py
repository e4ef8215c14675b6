"""Leader-enforcing baseline agent.

The agent occupies one player slot, asks its partner for instructions in its
first message, and otherwise only reacts: each incoming message is checked
for an instruction, parsed into a (target, landmark, direction) triple over
closed vocabularies, and resolved to a board position by fixed offset rules
(next to: x+10; above: y-10; below: y+10; on: the landmark centerpoint).

Parsing is pluggable: the deterministic RuleParser works offline; the
RemoteLLMParser calls a text-completion endpoint with few-shot prompts and
falls back to rules when the endpoint is unavailable.
"""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass, field
from pathlib import Path

import httpx

from . import prompts
from .game import OK, Board, Point, Scene, validate_placement
from .scenes import default_scenes

TARGETS = ("pillow", "cowboy", "cap", "pants", "garbage")
DIRECTIONS = ("on", "next_to", "above", "below")

MOVE_STEP = 10
OVERLAP_RETRY_MULTIPLIERS = (1, 2, 4)  # offset doubles on each retry, 3 attempts

TARGET_SYNONYMS = {
    "jeans": "pants",
    "trousers": "pants",
    "cushion": "pillow",
    "garbagebag": "garbage",
    "garbage bag": "garbage",
    "trash bag": "garbage",
    "trash": "garbage",
    "blue hat": "cap",
    "flat cap": "cap",
    "peaky blinders hat": "cap",
    "cowboy hat": "cowboy",
}

LANDMARK_SYNONYMS = {
    "water faucet": "sink",
    "faucet": "sink",
    "tap": "sink",
    "ceiling light": "lamp",
    "lamp stand": "lamp",
    "refrigerator": "fridge",
    "cooker": "stove",
    "couch": "sofa",
    "television": "tv",
    "telly": "tv",
    "bookshelf": "shelf",
    "bookcase": "shelf",
    "carpet": "rug",
    "mat": "rug",
}

DIRECTION_PHRASES = {"on": "on", "next_to": "next to", "above": "above", "below": "below"}

# Ordered: the first matching phrase decides.  "corner of X" reads as on X,
# and must win over the bare "right"/"left" inside "upper right corner".
_DIRECTION_RULES = (
    (r"\bcorner\b", "on"),
    (r"\bon top of\b", "above"),
    (r"\babove\b", "above"),
    (r"\bover\b", "above"),
    (r"\bunder(neath)?\b", "below"),
    (r"\bbelow\b", "below"),
    (r"\bbeneath\b", "below"),
    (r"\bnext to\b", "next_to"),
    (r"\bbeside\b", "next_to"),
    (r"\bnear\b", "next_to"),
    (r"\bright\b", "next_to"),
    (r"\bleft\b", "next_to"),
    (r"\bbehind\b", "next_to"),
    (r"\bin front of\b", "next_to"),
    (r"\bon(to)?\b", "on"),
    (r"\bin(to|side)?\b", "on"),
    (r"\bat\b", "on"),
)

_PLACEMENT_VERBS = re.compile(r"\b(put|place|move|drag)\b")
_INVENTORY_QUESTION = re.compile(r"\bdo you have\b|\bwhat\b.*\bhave\b|\bwhat objects\b")
_READY_REQUEST = re.compile(r"\b(ready|done|finish(ed)?|that's it|that is it)\b")


class ParseError(Exception):
    """The message could not be mapped into the closed vocabularies."""

    def __init__(self, missing: str):
        super().__init__(f"could not find a {missing} in the message")
        self.missing = missing


class ParserUnavailable(Exception):
    """The remote parser endpoint did not answer."""


@dataclass(frozen=True)
class ParsedInstruction:
    target: str
    landmark: str
    direction: str


@dataclass
class ParserVocabulary:
    """Closed term sets plus synonym maps for one scene."""

    targets: tuple[str, ...]
    landmarks: tuple[str, ...]
    target_synonyms: dict[str, str] = field(default_factory=dict)
    landmark_synonyms: dict[str, str] = field(default_factory=dict)


def load_synonyms(path: str | Path) -> dict[str, str]:
    """Load an extra name -> canonical-term map from a JSON file."""
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(doc, dict):
        raise ValueError("synonym file must be a JSON object")
    return {str(k).lower(): str(v).lower() for k, v in doc.items()}


def vocabulary_for_scene(scene: Scene, extra_synonyms: dict[str, str] | None = None) -> ParserVocabulary:
    """Build the parser vocabulary for a scene.

    Built-in synonyms whose canonical term is not in the scene are dropped,
    so the kitchen vocabulary never maps to living-room landmarks.
    """
    synonyms = dict(LANDMARK_SYNONYMS)
    if extra_synonyms:
        synonyms.update(extra_synonyms)
    landmarks = tuple(scene.landmarks)
    return ParserVocabulary(
        targets=tuple(scene.objects),
        landmarks=landmarks,
        target_synonyms={
            k: v for k, v in TARGET_SYNONYMS.items() if v in scene.objects
        },
        landmark_synonyms={k: v for k, v in synonyms.items() if v in landmarks},
    )


def _find_term(text: str, candidates: dict[str, str]) -> tuple[str, tuple[int, int]] | None:
    """Leftmost (longest on ties) match of any candidate phrase.

    `candidates` maps surface phrase -> canonical term; returns the canonical
    term and the matched span.
    """
    best = None
    for phrase, canonical in candidates.items():
        m = re.search(rf"\b{re.escape(phrase)}\b", text)
        if m is None:
            continue
        key = (m.start(), -len(phrase))
        if best is None or key < best[0]:
            best = (key, canonical, (m.start(), m.end()))
    if best is None:
        return None
    return best[1], best[2]


class RuleParser:
    """Deterministic offline parser over the closed vocabularies."""

    def __init__(self, vocab: ParserVocabulary):
        self.vocab = vocab
        self._target_candidates = {t: t for t in vocab.targets}
        self._target_candidates.update(vocab.target_synonyms)
        self._landmark_candidates = {l: l for l in vocab.landmarks}
        self._landmark_candidates.update(vocab.landmark_synonyms)

    def is_instruction(self, text: str) -> bool:
        low = text.lower()
        if _INVENTORY_QUESTION.search(low):
            return False
        if _PLACEMENT_VERBS.search(low):
            return True
        # verbless telegram style ("lamp on toilet"): a known term plus a
        # spatial phrase counts as an instruction
        has_term = (
            _find_term(low, self._target_candidates) is not None
            or _find_term(low, self._landmark_candidates) is not None
        )
        if not has_term:
            return False
        return any(re.search(pat, low) for pat, _ in _DIRECTION_RULES)

    def extract_target_landmark(self, text: str) -> tuple[str, str]:
        low = text.lower()
        target = _find_term(low, self._target_candidates)
        if target is None:
            raise ParseError("target")
        # the target mention must not double as the landmark ("garbage bag
        # on top of lamp stand": search landmarks outside the target span)
        t_start, t_end = target[1]
        masked = low[:t_start] + " " * (t_end - t_start) + low[t_end:]
        landmark = _find_term(masked, self._landmark_candidates)
        if landmark is None:
            raise ParseError("landmark")
        return target[0], landmark[0]

    def extract_direction(self, text: str) -> str:
        low = text.lower()
        for pattern, direction in _DIRECTION_RULES:
            if re.search(pattern, low):
                return direction
        raise ParseError("direction")


class RemoteLLMParser:
    """Parser backed by a text-completion endpoint.

    Configured by AGENT_LLM_ENDPOINT / AGENT_LLM_KEY / AGENT_LLM_MODEL.
    Completions are matched exactly against the closed vocabularies; any
    out-of-vocabulary answer is a parse failure, and transport errors raise
    ParserUnavailable so the caller can fall back to rules.
    """

    TIMEOUT_S = 10.0

    def __init__(
        self,
        vocab: ParserVocabulary,
        endpoint: str | None = None,
        api_key: str | None = None,
        model: str | None = None,
        client: httpx.Client | None = None,
    ):
        self.vocab = vocab
        self.endpoint = endpoint or os.environ.get("AGENT_LLM_ENDPOINT")
        self.api_key = api_key or os.environ.get("AGENT_LLM_KEY")
        self.model = model or os.environ.get("AGENT_LLM_MODEL")
        if not self.endpoint:
            raise ParserUnavailable("no endpoint configured")
        self._client = client or httpx.Client(timeout=self.TIMEOUT_S)

    def _complete(self, base: str, message: str, speaker: str = "[user 1]", me: str = "[you]") -> str:
        prompt = f"{base}\n\n{speaker}: {message}\n{me}:"
        headers = {}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"
        try:
            resp = self._client.post(
                self.endpoint,
                json={
                    "model": self.model,
                    "prompt": prompt,
                    "max_tokens": 16,
                    "temperature": 0,
                },
                headers=headers,
                timeout=self.TIMEOUT_S,
            )
            resp.raise_for_status()
            doc = resp.json()
        except (httpx.HTTPError, json.JSONDecodeError) as exc:
            raise ParserUnavailable(str(exc)) from exc
        try:
            return doc["choices"][0]["text"].strip().lower()
        except (KeyError, IndexError, AttributeError) as exc:
            raise ParserUnavailable(f"malformed completion: {doc!r}") from exc

    def is_instruction(self, text: str) -> bool:
        return self._complete(prompts.INSTRUCTION_CHECK_PROMPT, text) == "true"

    def extract_target_landmark(self, text: str) -> tuple[str, str]:
        answer = self._complete(prompts.TARGET_LANDMARK_PROMPT, text, "user 1", "you")
        parts = [p.strip() for p in answer.split(",")]
        if len(parts) != 2 or parts[0] not in self.vocab.targets:
            raise ParseError("target")
        if parts[1] not in self.vocab.landmarks:
            raise ParseError("landmark")
        return parts[0], parts[1]

    def extract_direction(self, text: str) -> str:
        answer = self._complete(prompts.DIRECTION_PROMPT, text)
        by_phrase = {phrase: d for d, phrase in DIRECTION_PHRASES.items()}
        if answer not in by_phrase:
            raise ParseError("direction")
        return by_phrase[answer]


def resolve_position(landmark_center: Point, direction: str, step: int = MOVE_STEP) -> Point:
    """Fixed offset rules mapping a direction to a target centerpoint."""
    x, y = landmark_center.x, landmark_center.y
    if direction == "on":
        return Point(x, y)
    if direction == "next_to":
        return Point(x + step, y)
    if direction == "above":
        return Point(x, y - step)
    if direction == "below":
        return Point(x, y + step)
    raise ValueError(f"unknown direction {direction!r}")


class Agent:
    """Reactive instruction follower for one player slot.

    Feed it inbound frames via :meth:`on_frame`; it returns the client
    actions to send ({"type": "chat"|"move"|"ready", ...}).  It never acts
    between partner messages and never initiates placements.
    """

    def __init__(
        self,
        scenes: dict[str, Scene] | None = None,
        parser_kind: str = "rule",
        extra_synonyms: dict[str, str] | None = None,
        llm_client: httpx.Client | None = None,
    ):
        if parser_kind not in ("rule", "llm"):
            raise ValueError(f"unknown parser kind {parser_kind!r}")
        self.scenes = scenes if scenes is not None else default_scenes()
        self.parser_kind = parser_kind
        self.extra_synonyms = extra_synonyms
        self._llm_client = llm_client
        self.player_id: str | None = None
        self.scene: Scene | None = None
        self.board: Board | None = None
        self.parser = None
        self._rule_parser = None

    # -- frame handling ------------------------------------------------------

    def on_frame(self, frame: dict) -> list[dict]:
        kind = frame.get("type")
        if kind == "joined":
            self.player_id = frame["player_id"]
            return []
        if kind == "round_start":
            return self._on_round_start(frame)
        if kind == "chat" and frame.get("from") != self.player_id:
            return self._on_message(frame["text"])
        return []

    def _on_round_start(self, frame: dict) -> list[dict]:
        self.scene = self.scenes[frame["scene"]]
        self.board = Board(
            {e["object"]: Point(e["x"], e["y"]) for e in frame["placements"]}
        )
        vocab = vocabulary_for_scene(self.scene, self.extra_synonyms)
        self._rule_parser = RuleParser(vocab)
        if self.parser_kind == "llm":
            try:
                self.parser = RemoteLLMParser(vocab, client=self._llm_client)
            except ParserUnavailable:
                self.parser = self._rule_parser
        else:
            self.parser = self._rule_parser
        return [self._chat("hi! you lead: tell me where to put each object and I'll match it.")]

    def _on_message(self, text: str) -> list[dict]:
        try:
            if self.parser.is_instruction(text):
                return self._follow_instruction(text)
        except ParserUnavailable:
            self.parser = self._rule_parser
            if self.parser.is_instruction(text):
                return self._follow_instruction(text)
        if _READY_REQUEST.search(text.lower()):
            return [self._chat("ok, ready!"), {"type": "ready"}]
        objects = ", ".join(self.scene.objects)
        return [self._chat(f"I have: {objects}. tell me where to put them.")]

    # -- instruction execution -----------------------------------------------

    def _follow_instruction(self, text: str) -> list[dict]:
        try:
            target, landmark = self.parser.extract_target_landmark(text)
            direction = self.parser.extract_direction(text)
        except ParserUnavailable:
            self.parser = self._rule_parser
            return self._follow_instruction(text)
        except ParseError as exc:
            return [
                self._chat(
                    f"sorry, I couldn't work out the {exc.missing}. "
                    f"could you rephrase that?"
                )
            ]
        return self.execute(ParsedInstruction(target, landmark, direction))

    def execute(self, instr: ParsedInstruction) -> list[dict]:
        """Pre-validate the resolved position, doubling the offset on overlap
        (10 -> 20 -> 40); after three failed attempts ask for clarification."""
        center = self.scene.landmarks[instr.landmark]
        nominal = resolve_position(center, instr.direction)
        placed: Point | None = None
        for mult in OVERLAP_RETRY_MULTIPLIERS:
            p = resolve_position(center, instr.direction, MOVE_STEP * mult)
            if validate_placement(self.scene, self.board, instr.target, p) == OK:
                placed = p
                break
        if placed is None:
            return [
                self._chat(
                    f"that spot for the {instr.target} is blocked on my board. "
                    f"could you pick another place?"
                )
            ]
        self.board = self.board.with_placement(instr.target, placed)
        phrase = DIRECTION_PHRASES[instr.direction]
        note = "" if placed == nominal else " (nudged to a free spot)"
        return [
            {"type": "move", "object": instr.target, "x": placed.x, "y": placed.y},
            self._chat(f"ok, {instr.target} {phrase} the {instr.landmark}{note}."),
        ]

    def _chat(self, text: str) -> dict:
        return {"type": "chat", "text": text}
