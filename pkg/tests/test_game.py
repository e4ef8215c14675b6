"""Game-rule tests: metric, scoring, validation, random layouts."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coplace.game import (
    OK,
    OUT_OF_BOUNDS,
    OVERLAP,
    Board,
    LayoutError,
    Point,
    Scene,
    UnknownObjectError,
    manhattan,
    mean_pair_distance,
    normalize_score,
    random_initial_placements,
    score_boards,
    validate_board,
    validate_placement,
)
from coplace.scenes import default_scenes


@pytest.fixture
def kitchen():
    return default_scenes()["kitchen"]


def test_manhattan_examples():
    assert manhattan(Point(0, 0), Point(3, 4)) == 7
    assert manhattan(Point(5, 5), Point(5, 5)) == 0
    assert manhattan(Point(10, 90), Point(90, 10)) == 160


def test_mean_pair_distance_identical_boards():
    board = Board({"a": Point(1, 2), "b": Point(30, 40)})
    assert mean_pair_distance(board, board) == 0


def test_mean_pair_distance_hand_computed():
    # five objects at distances 0, 10, 10, 20, 40 -> mean 16
    a = Board({f"o{i}": Point(0, 10 * i) for i in range(5)})
    b = Board(
        {
            "o0": Point(0, 0),
            "o1": Point(10, 10),
            "o2": Point(0, 30),
            "o3": Point(20, 30),
            "o4": Point(0, 80),
        }
    )
    assert mean_pair_distance(a, b) == 16


def test_mean_pair_distance_single_object():
    a = Board({"x": Point(0, 0)})
    b = Board({"x": Point(1, 1)})
    assert mean_pair_distance(a, b) == 2


def test_mean_pair_distance_rejects_object_mismatch():
    with pytest.raises(ValueError):
        mean_pair_distance(Board({"a": Point(0, 0)}), Board({"b": Point(0, 0)}))


def test_normalize_score_boundaries(kitchen):
    perfect = normalize_score(Fraction(0), kitchen)
    assert perfect.value == 100 and perfect.bonus
    floor = normalize_score(Fraction(kitchen.max_distance), kitchen)
    assert floor.value == 0 and not floor.bonus
    # beyond the onboard maximum still clamps to zero
    assert normalize_score(Fraction(10**6), kitchen).value == 0


def test_normalize_score_worked_example(kitchen):
    # 100x100 scene, mean distance 20: 100 * (1 - 20/200) = 90
    s = normalize_score(Fraction(20), kitchen)
    assert s.value == 90 and not s.bonus


def test_bonus_threshold_is_strict(kitchen):
    # value 99 exactly earns no bonus; anything above does
    at_99 = normalize_score(Fraction(2), kitchen)
    assert at_99.value == 99 and not at_99.bonus
    above = normalize_score(Fraction(1), kitchen)
    assert above.value == Fraction(199, 2) and above.bonus


def test_validate_placement_cases(kitchen):
    board = Board({"pillow": Point(50, 50), "cap": Point(20, 20)})
    assert validate_placement(kitchen, board, "pants", Point(80, 80)) == OK
    assert validate_placement(kitchen, board, "cap", Point(50, 50)) == OVERLAP
    # half-extent 5 pokes over the top-left edge
    assert validate_placement(kitchen, board, "pants", Point(0, 0)) == OUT_OF_BOUNDS
    with pytest.raises(UnknownObjectError):
        validate_placement(kitchen, board, "sofa", Point(50, 50))


def test_validate_placement_edge_contact_is_legal(kitchen):
    board = Board({"pillow": Point(50, 50)})
    # centers exactly one extent apart: boxes touch, no positive area shared
    assert validate_placement(kitchen, board, "cap", Point(60, 50)) == OK
    assert validate_placement(kitchen, board, "cap", Point(59, 50)) == OVERLAP
    # box flush against the scene edge is fine
    assert validate_placement(kitchen, board, "cap", Point(5, 5)) == OK
    assert validate_placement(kitchen, board, "cap", Point(4, 5)) == OUT_OF_BOUNDS


def test_validate_placement_ignores_own_old_position(kitchen):
    board = Board({"pillow": Point(50, 50), "cap": Point(80, 80)})
    assert validate_placement(kitchen, board, "pillow", Point(52, 50)) == OK


def test_random_layout_deterministic(kitchen):
    assert random_initial_placements(kitchen, 42) == random_initial_placements(kitchen, 42)


def test_random_layout_varies_with_seed(kitchen):
    a = random_initial_placements(kitchen, 1)
    b = random_initial_placements(kitchen, 2)
    assert a != b


def test_random_layout_always_valid(kitchen):
    for seed in range(50):
        board = random_initial_placements(kitchen, seed)
        assert validate_board(kitchen, board)


def test_random_layout_overcrowded_scene_fails():
    tiny = Scene("tiny", 12, 12, {}, ("a", "b", "c", "d"), 10)
    with pytest.raises(LayoutError):
        random_initial_placements(tiny, 0)


# -- properties ----------------------------------------------------------------

def _random_board(scene, rng_seed):
    return random_initial_placements(scene, rng_seed)


@given(seed_a=st.integers(0, 10_000), seed_b=st.integers(0, 10_000))
@settings(max_examples=60, deadline=None)
def test_score_symmetry_and_identity(seed_a, seed_b):
    scene = default_scenes()["kitchen"]
    a, b = _random_board(scene, seed_a), _random_board(scene, seed_b)
    assert score_boards(a, a, scene).value == 100
    assert score_boards(a, b, scene).value == score_boards(b, a, scene).value


@given(seed=st.integers(0, 10_000))
@settings(max_examples=60, deadline=None)
def test_bonus_iff_above_99(seed):
    scene = default_scenes()["kitchen"]
    a, b = _random_board(scene, seed), _random_board(scene, seed + 1)
    s = score_boards(a, b, scene)
    assert s.bonus == (s.value > 99)
    assert 0 <= s.value <= 100


@given(d1=st.integers(0, 200), d2=st.integers(0, 200))
@settings(max_examples=100, deadline=None)
def test_normalize_monotone_nonincreasing(d1, d2):
    scene = default_scenes()["kitchen"]
    lo, hi = sorted((d1, d2))
    assert normalize_score(Fraction(lo), scene).value >= normalize_score(Fraction(hi), scene).value
    if lo < hi <= scene.max_distance:
        assert normalize_score(Fraction(lo), scene).value > normalize_score(Fraction(hi), scene).value


@given(seed=st.integers(0, 10_000), data=st.data())
@settings(max_examples=60, deadline=None)
def test_accepted_move_keeps_board_valid(seed, data):
    scene = default_scenes()["kitchen"]
    board = _random_board(scene, seed)
    obj = data.draw(st.sampled_from(sorted(scene.objects)))
    p = Point(data.draw(st.integers(0, 110)), data.draw(st.integers(0, 110)))
    if validate_placement(scene, board, obj, p) == OK:
        assert validate_board(scene, board.with_placement(obj, p))
