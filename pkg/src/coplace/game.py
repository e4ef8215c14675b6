"""Pure game rules: scenes, boards, placement validation, scoring.

Everything here is an immutable value or a pure function, safe to call from
any thread.  Coordinates are integer grid units with the origin at the top
left and y increasing downward.  Scores use exact rational arithmetic so the
bonus threshold comparison is never subject to float rounding.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

OK = "ok"
OVERLAP = "overlap"
OUT_OF_BOUNDS = "out_of_bounds"

BONUS_THRESHOLD = 99  # bonus iff score strictly above this

# Attempts per object when sampling a random layout before giving up.
_PLACEMENT_ATTEMPTS = 2000


class LayoutError(Exception):
    """No non-overlapping layout was found within the attempt budget."""


class UnknownObjectError(KeyError):
    """The named object is not part of the scene."""


@dataclass(frozen=True)
class Point:
    x: int
    y: int


@dataclass(frozen=True)
class Scene:
    """Immutable round definition: a board with fixed landmarks and a roster
    of movable objects, all sharing one square bounding-box size.
    """

    scene_id: str
    width: int
    height: int
    landmarks: dict[str, Point]
    objects: tuple[str, ...]
    object_extent: int

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0:
            raise ValueError(f"scene {self.scene_id}: non-positive dimensions")
        if self.object_extent <= 0:
            raise ValueError(f"scene {self.scene_id}: non-positive object_extent")
        if len(set(self.objects)) != len(self.objects):
            raise ValueError(f"scene {self.scene_id}: duplicate object names")
        for name, p in self.landmarks.items():
            if not (0 <= p.x < self.width and 0 <= p.y < self.height):
                raise ValueError(
                    f"scene {self.scene_id}: landmark {name!r} at ({p.x},{p.y}) "
                    f"outside [0,{self.width})x[0,{self.height})"
                )

    @property
    def max_distance(self) -> int:
        """Largest Manhattan distance the grid admits, used to normalize scores."""
        return self.width + self.height


@dataclass(frozen=True)
class Board:
    """One player's placement of every movable object (object centerpoints)."""

    placements: dict[str, Point] = field(default_factory=dict)

    def get(self, obj: str) -> Point:
        return self.placements[obj]

    def with_placement(self, obj: str, p: Point) -> "Board":
        updated = dict(self.placements)
        updated[obj] = p
        return Board(updated)


@dataclass(frozen=True)
class Score:
    value: Fraction
    bonus: bool

    def __post_init__(self):
        assert self.bonus == (self.value > BONUS_THRESHOLD)


def make_score(value: Fraction) -> Score:
    return Score(value=value, bonus=value > BONUS_THRESHOLD)


def manhattan(p: Point, q: Point) -> int:
    return abs(p.x - q.x) + abs(p.y - q.y)


def mean_pair_distance(a: Board, b: Board) -> Fraction:
    """Arithmetic mean of per-object Manhattan distances, exact.

    Raises ValueError when the two boards do not place the same object set.
    """
    if a.placements.keys() != b.placements.keys():
        raise ValueError("boards place different object sets")
    if not a.placements:
        raise ValueError("boards are empty")
    total = sum(manhattan(a.get(o), b.get(o)) for o in a.placements)
    return Fraction(total, len(a.placements))


def normalize_score(mean_dist: Fraction, scene: Scene) -> Score:
    """Map a mean distance to the 0..100 scale: 100 at distance 0, falling
    linearly to 0 at the grid's maximum Manhattan distance, clamped."""
    if mean_dist < 0:
        raise ValueError("mean distance must be non-negative")
    value = 100 * (1 - Fraction(mean_dist) / scene.max_distance)
    value = max(Fraction(0), min(Fraction(100), value))
    return make_score(value)


def score_boards(a: Board, b: Board, scene: Scene) -> Score:
    return normalize_score(mean_pair_distance(a, b), scene)


def _boxes_overlap(p: Point, q: Point, extent: int) -> bool:
    # Positive-area intersection of two axis-aligned squares of side `extent`
    # centered on p and q; edge contact is not an overlap.
    return abs(p.x - q.x) < extent and abs(p.y - q.y) < extent


def _in_bounds(p: Point, scene: Scene) -> bool:
    # Doubled comparison keeps half-extents exact for odd extents.
    e = scene.object_extent
    return (
        2 * p.x - e >= 0
        and 2 * p.x + e <= 2 * scene.width
        and 2 * p.y - e >= 0
        and 2 * p.y + e <= 2 * scene.height
    )


def validate_placement(scene: Scene, board: Board, obj: str, p: Point) -> str:
    """Check whether moving `obj` to `p` keeps the board valid.

    Returns OK, OVERLAP or OUT_OF_BOUNDS.  The moved object is checked
    against every *other* placed object.  Unknown objects raise.
    """
    if obj not in scene.objects:
        raise UnknownObjectError(obj)
    if not _in_bounds(p, scene):
        return OUT_OF_BOUNDS
    for other, q in board.placements.items():
        if other == obj:
            continue
        if _boxes_overlap(p, q, scene.object_extent):
            return OVERLAP
    return OK


def validate_board(scene: Scene, board: Board) -> bool:
    """Full-board check: every scene object placed once, all boxes inside the
    scene, no positive-area overlaps."""
    if set(board.placements) != set(scene.objects):
        return False
    return all(
        validate_placement(scene, board, obj, p) == OK
        for obj, p in board.placements.items()
    )


def coordinate_ranges(scene: Scene) -> tuple[tuple[int, int], tuple[int, int]]:
    """Inclusive (x, y) centerpoint ranges that keep a box fully in-bounds."""
    e = scene.object_extent
    lo = (e + 1) // 2
    return (lo, (2 * scene.width - e) // 2), (lo, (2 * scene.height - e) // 2)


def random_initial_placements(scene: Scene, seed: int) -> Board:
    """Sample a valid random layout, deterministically for a fixed seed.

    Objects are placed one at a time by rejection sampling; raises
    LayoutError when the scene is too crowded to admit a layout within the
    attempt budget.
    """
    rng = random.Random(seed)
    e = scene.object_extent
    lo_x, hi_x = (e + 1) // 2, (2 * scene.width - e) // 2
    lo_y, hi_y = (e + 1) // 2, (2 * scene.height - e) // 2
    if lo_x > hi_x or lo_y > hi_y:
        raise LayoutError(f"scene {scene.scene_id}: objects do not fit at all")

    board = Board({})
    for obj in scene.objects:
        for _ in range(_PLACEMENT_ATTEMPTS):
            p = Point(rng.randint(lo_x, hi_x), rng.randint(lo_y, hi_y))
            if validate_placement(scene, board, obj, p) == OK:
                board = board.with_placement(obj, p)
                break
        else:
            raise LayoutError(
                f"scene {scene.scene_id}: no free spot for {obj!r} "
                f"after {_PLACEMENT_ATTEMPTS} attempts"
            )
    return board
