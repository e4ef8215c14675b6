"""Dominance metric and reporting tests.

Expected values for the worked dominance examples were frozen from a
high-precision mpmath evaluation of verbosity * L(RD) (see
test_acceptance.py for the live oracle comparison).
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coplace.analysis import (
    BACK_AND_FORTH,
    GRIP_LOOSENING,
    GRIP_TIGHTENING,
    LEADER,
    GameStats,
    Transcript,
    classify_strategy,
    dominance,
    dominance_diff,
    report,
    verbosity,
    volume,
)
from coplace.session import ChatMessage


def make_transcript(counts_and_lengths, round=1):
    """counts_and_lengths: {player: list of message token counts}."""
    messages = []
    ts = 0
    senders = list(counts_and_lengths)
    # interleave so ordering never matters
    queues = {p: list(lengths) for p, lengths in counts_and_lengths.items()}
    while any(queues.values()):
        for p in senders:
            if queues[p]:
                n = queues[p].pop(0)
                messages.append(ChatMessage(p, " ".join(["w"] * n), ts, round))
                ts += 1
    return Transcript(round=round, messages=messages, player_ids=tuple(senders))


def test_volume_examples():
    t = make_transcript({"a": [1] * 5, "b": [1] * 5})
    assert volume(t, "a") == 50
    t = make_transcript({"a": [1] * 9, "b": [1]})
    assert volume(t, "a") == 90
    t = make_transcript({"a": [1] * 7, "b": []})
    assert volume(t, "b") == 0


def test_volume_requires_messages():
    t = Transcript(round=1, messages=[], player_ids=("a", "b"))
    with pytest.raises(ValueError):
        volume(t, "a")


def test_verbosity_examples():
    t = make_transcript({"a": [2, 4], "b": []})
    assert verbosity(t, "a") == 3
    assert verbosity(t, "b") == 0
    t = make_transcript({"a": [10], "b": [1]})
    assert verbosity(t, "a") == 10


def test_verbosity_char_unit():
    t = Transcript(
        round=1,
        messages=[ChatMessage("a", "abcd efg", 0, 1)],
        player_ids=("a", "b"),
    )
    assert verbosity(t, "a", "tokens") == 2
    assert verbosity(t, "a", "chars") == 8


def test_dominance_symmetric_case():
    # equal volume and equal verbosity v: both get 0.5 * v
    t = make_transcript({"a": [6, 6], "b": [6, 6]})
    result = dominance(t)
    assert result.rd == 0
    assert result.d["a"] == pytest.approx(3.0)
    assert result.d["b"] == pytest.approx(3.0)


def test_dominance_90_10_example():
    # volumes 90/10, both verbosity 10 -> RD = 0.8
    t = make_transcript({"a": [10] * 9, "b": [10]})
    result = dominance(t)
    assert result.rd == Fraction(8, 10)
    assert result.d["a"] == pytest.approx(6.8997448112761244, abs=1e-12)
    assert result.d["b"] == pytest.approx(3.1002551887238756, abs=1e-12)
    assert dominance_diff(t) == pytest.approx(3.7994896225522489, abs=1e-12)


def test_dominance_75_25_example():
    # volumes 75/25, verbosity 8 and 4 -> RD = 0.5
    t = make_transcript({"a": [8, 8, 8], "b": [4]})
    result = dominance(t)
    assert result.rd == Fraction(1, 2)
    assert result.d["a"] == pytest.approx(4.9796746496148365, abs=1e-12)
    assert result.d["b"] == pytest.approx(1.5101626751925817, abs=1e-12)


def test_dominance_diff_symmetric_is_zero():
    t = make_transcript({"a": [3, 5], "b": [5, 3]})
    assert dominance_diff(t) == pytest.approx(0.0)


def test_zero_message_player_has_zero_dominance():
    t = make_transcript({"a": [4, 4], "b": []})
    result = dominance(t)
    assert result.d["b"] == 0.0
    assert result.volume["a"] == 100


def test_classify_strategy_examples():
    assert classify_strategy(2.0, 2.5) == LEADER
    assert classify_strategy(0.9, 0.9) == BACK_AND_FORTH
    assert classify_strategy(0.8, 1.7) == GRIP_TIGHTENING
    assert classify_strategy(1.7, 0.8) == GRIP_LOOSENING


def test_classify_strategy_theta_is_inclusive_lower_bound():
    assert classify_strategy(1.3, 1.3) == LEADER
    assert classify_strategy(1.2999, 1.3) == GRIP_TIGHTENING


@given(d1=st.floats(0, 50, allow_nan=False), d2=st.floats(0, 50, allow_nan=False))
@settings(max_examples=200, deadline=None)
def test_classify_strategy_total(d1, d2):
    assert classify_strategy(d1, d2) in (
        LEADER, BACK_AND_FORTH, GRIP_TIGHTENING, GRIP_LOOSENING,
    )


@given(seed=st.integers(0, 10_000))
@settings(max_examples=50, deadline=None)
def test_volumes_sum_to_100(seed):
    import random

    rng = random.Random(seed)
    counts = {"a": [rng.randint(1, 9) for _ in range(rng.randint(0, 8))],
              "b": [rng.randint(1, 9) for _ in range(rng.randint(1, 8))]}
    t = make_transcript(counts)
    assert volume(t, "a") + volume(t, "b") == 100


@given(seed=st.integers(0, 10_000))
@settings(max_examples=50, deadline=None)
def test_dominance_invariant_under_reordering(seed):
    import random

    rng = random.Random(seed)
    counts = {"a": [rng.randint(1, 9) for _ in range(rng.randint(1, 8))],
              "b": [rng.randint(1, 9) for _ in range(rng.randint(1, 8))]}
    t = make_transcript(counts)
    shuffled = Transcript(t.round, list(t.messages), t.player_ids)
    rng.shuffle(shuffled.messages)
    assert dominance(t).d == dominance(shuffled).d


@given(seed=st.integers(0, 10_000))
@settings(max_examples=50, deadline=None)
def test_higher_volume_and_verbosity_dominates(seed):
    import random

    rng = random.Random(seed)
    n_b = rng.randint(1, 5)
    n_a = n_b + rng.randint(0, 5)
    len_b = rng.randint(1, 6)
    len_a = len_b + rng.randint(0, 6)
    t = make_transcript({"a": [len_a] * n_a, "b": [len_b] * n_b})
    result = dominance(t)
    assert result.d["a"] >= result.d["b"]
    assert Fraction(0) <= result.rd <= 1


def _game(game_id, d_pattern, scores):
    """d_pattern: per round, (leader-ish or balanced) message layout."""
    transcripts = []
    for i, kind in enumerate(d_pattern, start=1):
        if kind == "led":
            transcripts.append(make_transcript({"a": [8] * 8, "b": [1] * 2}, round=i))
        else:
            transcripts.append(make_transcript({"a": [4] * 5, "b": [4] * 5}, round=i))
    return GameStats(game_id, transcripts, scores)


def test_report_single_game_row():
    games = [_game("g1", ("bal", "bal"), [(100.0, True), (100.0, True)])]
    table = report(games)
    assert list(table.rows) == [BACK_AND_FORTH]
    row = table.rows[BACK_AND_FORTH]
    assert row.games == 1
    assert row.mean_scores == [100.0, 100.0]
    assert row.bonus_rates == [100.0, 100.0]


def test_report_omits_absent_strategies():
    games = [
        _game("g1", ("led", "led"), [(80.0, False), (85.0, False)]),
        _game("g2", ("bal", "led"), [(90.0, False), (99.5, True)]),
    ]
    table = report(games)
    assert set(table.rows) == {LEADER, GRIP_TIGHTENING}


def test_report_excludes_silent_and_unfinished_games():
    silent = GameStats(
        "g-silent",
        [Transcript(1, [], ("a", "b")), make_transcript({"a": [2], "b": [2]}, 2)],
        [(50.0, False), (60.0, False)],
    )
    unfinished = _game("g-short", ("bal",), [(70.0, False)])
    unfinished.transcripts = unfinished.transcripts[:1]
    ok = _game("g-ok", ("bal", "bal"), [(100.0, True), (90.0, False)])
    table = report([silent, unfinished, ok])
    assert table.games_excluded == 2
    assert table.rows[BACK_AND_FORTH].games == 1


def test_report_requires_input():
    with pytest.raises(ValueError):
        report([])


def test_report_doc_round_trips_to_json():
    import json

    games = [_game("g1", ("bal", "bal"), [(100.0, True), (95.0, False)])]
    doc = report(games).to_doc()
    parsed = json.loads(json.dumps(doc))
    assert parsed["strategies"][BACK_AND_FORTH]["games"] == 1
    assert parsed["series"]["strategies"] == [BACK_AND_FORTH]
