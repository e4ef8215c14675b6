"""Scene configuration: shipped defaults plus a JSON config-file loader.

A config file holds a list of scene documents, each with the fields
scene_id, width, height, object_extent, objects and landmarks
(name -> {"x": int, "y": int}).
"""

from __future__ import annotations

import json
from pathlib import Path

from .game import Point, Scene

GAME_OBJECTS = ("pillow", "pants", "garbage", "cap", "cowboy")

# Round order: every game plays the kitchen first, then the living room.
ROUND_SCENES = ("kitchen", "livingroom")

_DEFAULT_SCENE_DOCS = [
    {
        "scene_id": "kitchen",
        "width": 100,
        "height": 100,
        "object_extent": 10,
        "objects": list(GAME_OBJECTS),
        "landmarks": {
            "fridge": {"x": 15, "y": 15},
            "toaster": {"x": 45, "y": 15},
            "lamp": {"x": 75, "y": 15},
            "oven": {"x": 15, "y": 45},
            "stove": {"x": 45, "y": 45},
            "counter": {"x": 75, "y": 45},
            "sink": {"x": 45, "y": 75},
        },
    },
    {
        "scene_id": "livingroom",
        "width": 100,
        "height": 100,
        "object_extent": 10,
        "objects": list(GAME_OBJECTS),
        "landmarks": {
            "door": {"x": 15, "y": 15},
            "sofa": {"x": 55, "y": 15},
            "rug": {"x": 15, "y": 45},
            "table": {"x": 55, "y": 45},
            "shelf": {"x": 15, "y": 75},
            "tv": {"x": 85, "y": 20},
            "window": {"x": 85, "y": 60},
        },
    },
]


def scene_from_doc(doc: dict) -> Scene:
    try:
        landmarks = {
            name: Point(int(p["x"]), int(p["y"]))
            for name, p in doc["landmarks"].items()
        }
        return Scene(
            scene_id=doc["scene_id"],
            width=int(doc["width"]),
            height=int(doc["height"]),
            landmarks=landmarks,
            objects=tuple(doc["objects"]),
            object_extent=int(doc["object_extent"]),
        )
    except KeyError as exc:
        raise ValueError(f"scene document missing field {exc}") from exc


def scene_to_doc(scene: Scene) -> dict:
    return {
        "scene_id": scene.scene_id,
        "width": scene.width,
        "height": scene.height,
        "object_extent": scene.object_extent,
        "objects": list(scene.objects),
        "landmarks": {n: {"x": p.x, "y": p.y} for n, p in scene.landmarks.items()},
    }


def default_scenes() -> dict[str, Scene]:
    return {doc["scene_id"]: scene_from_doc(doc) for doc in _DEFAULT_SCENE_DOCS}


def load_scenes(path: str | Path) -> dict[str, Scene]:
    """Load scenes from a JSON config file (a list of scene documents)."""
    docs = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(docs, list):
        raise ValueError("scene config must be a JSON list of scene documents")
    scenes = {}
    for doc in docs:
        scene = scene_from_doc(doc)
        if scene.scene_id in scenes:
            raise ValueError(f"duplicate scene_id {scene.scene_id!r}")
        scenes[scene.scene_id] = scene
    return scenes


def write_default_config(path: str | Path) -> None:
    """Write the shipped default scenes out as an editable config file."""
    Path(path).write_text(
        json.dumps(_DEFAULT_SCENE_DOCS, indent=2) + "\n", encoding="utf-8"
    )
