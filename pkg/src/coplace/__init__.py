"""coplace: a two-player collaborative 2D object-placement game platform.

Players on private boards negotiate a joint layout over chat; rounds are
scored by the mean Manhattan distance between matching objects.  The package
ships the game rules, a WebSocket server with append-only event logs, a
dialogue-dominance analysis pipeline, a rule/LLM instruction-following
baseline agent, and a deterministic self-play harness.
"""

from .agent import (
    Agent,
    ParsedInstruction,
    ParseError,
    RuleParser,
    RemoteLLMParser,
    resolve_position,
    vocabulary_for_scene,
)
from .analysis import (
    DominanceResult,
    Transcript,
    classify_strategy,
    dominance,
    dominance_diff,
    report,
    verbosity,
    volume,
)
from .eventlog import EventLogWriter, LogRecord, load_transcripts, replay
from .game import (
    Board,
    Point,
    Scene,
    Score,
    manhattan,
    mean_pair_distance,
    normalize_score,
    random_initial_placements,
    validate_placement,
)
from .scenes import default_scenes, load_scenes
from .selfplay import (
    AlternatingScript,
    BaselineAgentPolicy,
    FollowerScript,
    GameRecord,
    LeaderScript,
    batch_run,
    noisy_leader,
    run_game,
)
from .session import ChatMessage, GameState, PlayerSlot, Room

__all__ = [
    "Agent",
    "AlternatingScript",
    "BaselineAgentPolicy",
    "Board",
    "ChatMessage",
    "DominanceResult",
    "EventLogWriter",
    "FollowerScript",
    "GameRecord",
    "GameState",
    "LeaderScript",
    "LogRecord",
    "ParseError",
    "ParsedInstruction",
    "PlayerSlot",
    "Point",
    "RemoteLLMParser",
    "Room",
    "RuleParser",
    "Scene",
    "Score",
    "Transcript",
    "batch_run",
    "classify_strategy",
    "default_scenes",
    "dominance",
    "dominance_diff",
    "load_scenes",
    "load_transcripts",
    "manhattan",
    "mean_pair_distance",
    "noisy_leader",
    "normalize_score",
    "random_initial_placements",
    "replay",
    "report",
    "resolve_position",
    "run_game",
    "validate_placement",
    "verbosity",
    "volume",
    "vocabulary_for_scene",
]
