"""Dialogue dominance metrics, strategy classification and batch reporting.

The dominance score of a player in a round combines how much of the chat
they produced (volume, % of messages) with how long their messages were
(verbosity).  Writing A for the higher-volume player and RD for A's relative
volume advantage, ``d_A = verbosity_A * L(RD)`` and
``d_B = verbosity_B * (1 - L(RD))`` where L is the logistic function, which
dampens large volume gaps and emphasizes small ones.

All counting is exact (fractions); only the logistic step is float.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .eventlog import load_transcripts, read_records
from .session import ChatMessage

LEADER = "leader"
BACK_AND_FORTH = "back_and_forth"
GRIP_TIGHTENING = "grip_tightening"
GRIP_LOOSENING = "grip_loosening"

STRATEGY_LABELS = (LEADER, BACK_AND_FORTH, GRIP_TIGHTENING, GRIP_LOOSENING)

DEFAULT_THETA = 1.3
LENGTH_UNITS = ("tokens", "chars")


@dataclass
class Transcript:
    """Ordered chat of one round between two players."""

    round: int
    messages: list[ChatMessage]
    player_ids: tuple[str, str]


@dataclass
class DominanceResult:
    d: dict[str, float]
    volume: dict[str, Fraction]
    verbosity: dict[str, Fraction]
    rd: Fraction


def _message_length(msg: ChatMessage, length_unit: str) -> int:
    if length_unit == "tokens":
        return len(msg.text.split())
    if length_unit == "chars":
        return len(msg.text)
    raise ValueError(f"unknown length unit {length_unit!r}")


def volume(t: Transcript, player: str) -> Fraction:
    """Percentage of the round's messages sent by `player`, out of 100."""
    if not t.messages:
        raise ValueError("empty transcript has no volumes")
    sent = sum(1 for m in t.messages if m.sender == player)
    return Fraction(100 * sent, len(t.messages))


def verbosity(t: Transcript, player: str, length_unit: str = "tokens") -> Fraction:
    """Mean message length of `player` in the round; 0 if they sent nothing."""
    lengths = [
        _message_length(m, length_unit) for m in t.messages if m.sender == player
    ]
    if not lengths:
        return Fraction(0)
    return Fraction(sum(lengths), len(lengths))


def logistic(x: float) -> float:
    return 1.0 / (1.0 + math.exp(-x))


def dominance(t: Transcript, length_unit: str = "tokens") -> DominanceResult:
    """Per-player dominance scores for one round.

    A volume tie needs no arbitrary choice of A: RD is 0 and both sides use
    L(0) = 0.5, where the two formulas coincide.
    """
    if not t.messages:
        raise ValueError("empty transcript has no dominance scores")
    pa, pb = t.player_ids
    vols = {p: volume(t, p) for p in (pa, pb)}
    verbs = {p: verbosity(t, p, length_unit) for p in (pa, pb)}
    if vols[pb] > vols[pa]:
        pa, pb = pb, pa
    rd = (vols[pa] - vols[pb]) / (vols[pa] + vols[pb])
    weight = logistic(float(rd))
    d = {pa: float(verbs[pa]) * weight, pb: float(verbs[pb]) * (1.0 - weight)}
    return DominanceResult(d=d, volume=vols, verbosity=verbs, rd=rd)


def dominance_diff(t: Transcript, length_unit: str = "tokens") -> float:
    """Absolute gap between the two players' dominance scores."""
    result = dominance(t, length_unit)
    a, b = result.d.values()
    return abs(a - b)


def classify_strategy(
    diff_r1: float, diff_r2: float, theta: float = DEFAULT_THETA
) -> str:
    """Label a game from its two per-round dominance gaps.

    The threshold is a heuristic stand-in for manual annotation: a round
    with a gap of at least theta counts as leader-led.
    """
    if theta <= 0:
        raise ValueError("theta must be positive")
    led_r1, led_r2 = diff_r1 >= theta, diff_r2 >= theta
    if led_r1 and led_r2:
        return LEADER
    if not led_r1 and not led_r2:
        return BACK_AND_FORTH
    if not led_r1 and led_r2:
        return GRIP_TIGHTENING
    return GRIP_LOOSENING


# -- batch reporting ---------------------------------------------------------


@dataclass
class GameStats:
    """One game's analysis inputs: per-round transcripts and round scores."""

    game_id: str
    transcripts: list[Transcript]
    scores: list[tuple[float, bool]]  # (score, bonus) per completed round


@dataclass
class StrategyRow:
    strategy: str
    games: int
    mean_scores: list[float]  # per round
    bonus_rates: list[float]  # per round, percent
    mean_diffs: list[float]  # per round


@dataclass
class ReportTable:
    theta: float
    length_unit: str
    rows: dict[str, StrategyRow]
    games_total: int
    games_excluded: int

    def to_doc(self) -> dict:
        return {
            "theta": self.theta,
            "length_unit": self.length_unit,
            "games_total": self.games_total,
            "games_excluded": self.games_excluded,
            "strategies": {
                label: {
                    "games": row.games,
                    "mean_scores": row.mean_scores,
                    "bonus_rates": row.bonus_rates,
                    "mean_dominance_diffs": row.mean_diffs,
                }
                for label, row in self.rows.items()
            },
            # plot-ready series, one entry per strategy in table order
            "series": {
                "strategies": list(self.rows),
                "round1_mean_score": [r.mean_scores[0] for r in self.rows.values()],
                "round2_mean_score": [r.mean_scores[1] for r in self.rows.values()],
                "round1_bonus_rate": [r.bonus_rates[0] for r in self.rows.values()],
                "round2_bonus_rate": [r.bonus_rates[1] for r in self.rows.values()],
            },
        }

    def render_text(self) -> str:
        header = (
            f"{'strategy':<18}{'games':>6}{'score r1':>10}{'score r2':>10}"
            f"{'bonus r1':>10}{'bonus r2':>10}{'diff r1':>9}{'diff r2':>9}"
        )
        lines = [header, "-" * len(header)]
        for row in self.rows.values():
            lines.append(
                f"{row.strategy:<18}{row.games:>6}"
                f"{row.mean_scores[0]:>10.2f}{row.mean_scores[1]:>10.2f}"
                f"{row.bonus_rates[0]:>9.1f}%{row.bonus_rates[1]:>9.1f}%"
                f"{row.mean_diffs[0]:>9.3f}{row.mean_diffs[1]:>9.3f}"
            )
        lines.append(
            f"({self.games_total} games, {self.games_excluded} excluded:"
            f" unfinished or with a silent round)"
        )
        return "\n".join(lines)


def report(
    games: list[GameStats],
    theta: float = DEFAULT_THETA,
    length_unit: str = "tokens",
) -> ReportTable:
    """Aggregate scores and bonuses by classified strategy.

    Games without two completed rounds, or with a round in which nobody
    spoke, cannot be classified and are excluded.
    """
    if not games:
        raise ValueError("no games to report on")
    buckets: dict[str, list[GameStats]] = {}
    diffs: dict[str, list[tuple[float, float]]] = {}
    excluded = 0
    for game in games:
        if len(game.transcripts) < 2 or len(game.scores) < 2:
            excluded += 1
            continue
        if any(not t.messages for t in game.transcripts[:2]):
            excluded += 1
            continue
        d1 = dominance_diff(game.transcripts[0], length_unit)
        d2 = dominance_diff(game.transcripts[1], length_unit)
        label = classify_strategy(d1, d2, theta)
        buckets.setdefault(label, []).append(game)
        diffs.setdefault(label, []).append((d1, d2))
    rows = {}
    for label in STRATEGY_LABELS:
        if label not in buckets:
            continue
        group = buckets[label]
        n = len(group)
        rows[label] = StrategyRow(
            strategy=label,
            games=n,
            mean_scores=[
                sum(g.scores[r][0] for g in group) / n for r in range(2)
            ],
            bonus_rates=[
                100.0 * sum(1 for g in group if g.scores[r][1]) / n for r in range(2)
            ],
            mean_diffs=[
                sum(d[r] for d in diffs[label]) / n for r in range(2)
            ],
        )
    return ReportTable(
        theta=theta,
        length_unit=length_unit,
        rows=rows,
        games_total=len(games),
        games_excluded=excluded,
    )


def games_from_log_dir(log_dir: str | Path) -> list[GameStats]:
    """Build analysis inputs from every room log in a directory."""
    stats = []
    for path in sorted(Path(log_dir).glob("*.log")):
        records = read_records(path)
        scores = [
            (rec.payload["score"], rec.payload["bonus"])
            for rec in records
            if rec.kind == "round_end"
        ]
        stats.append(
            GameStats(
                game_id=path.stem,
                transcripts=load_transcripts(records),
                scores=scores,
            )
        )
    return stats
