"""Scene JSON files.

The format is a superset of CLEVR's scene files::

    {"info": {"kind": "scenes", "format_version": ..., ...},
     "scenes": [
        {"image_index": 0,
         "objects": [{"id", "shape", "category", "size", "color", "material",
                      ["texture"], "3d_coords": [x, y, 0.0], "rotation",
                      "radius", "parts": {name: {"color", "material",
                                                  ["texture"]}}}],
         "relationships": {"left": [[ids], ...], "right": ..., "front": ...,
                           "behind": ...},
         "provenance": {"config_digest", "seed", "split", "visual"}}]}

Keys are written in exactly this order. ``texture`` keys appear only for
textured objects and parts.
"""

__all__ = ["scene_to_json", "scene_from_json", "dump_scenes", "load_scenes"]

from collections.abc import Iterable, Mapping
from pathlib import Path
from typing import Any

from plum import dispatch

from .core import ObjectInstance, PartInstance, Provenance, Scene
from .relations import RELATIONS, derive_relations
from clevrshift.errors import DataError
from clevrshift.utils import dump_json, info_block, load_json


@dispatch
def to_json(obj: PartInstance, /) -> dict[str, Any]:
    out: dict[str, Any] = {"color": obj.color, "material": obj.material}
    if obj.texture is not None:
        out["texture"] = obj.texture
    return out


@dispatch
def to_json(obj: ObjectInstance, /) -> dict[str, Any]:
    out: dict[str, Any] = {
        "id": obj.id,
        "shape": obj.shape,
        "category": obj.category,
        "size": obj.size,
        "color": obj.color,
        "material": obj.material,
    }
    if obj.texture is not None:
        out["texture"] = obj.texture
    out["3d_coords"] = [obj.x, obj.y, 0.0]
    out["rotation"] = obj.rotation
    out["radius"] = obj.radius
    out["parts"] = {p.name: to_json(p) for p in obj.parts}
    return out


@dispatch
def to_json(obj: Provenance, /) -> dict[str, Any]:
    return {
        "config_digest": obj.config_digest,
        "seed": obj.seed,
        "split": obj.split,
        "visual": obj.visual,
    }


@dispatch
def to_json(obj: Scene, /) -> dict[str, Any]:
    return {
        "image_index": obj.scene_id,
        "objects": [to_json(o) for o in obj.objects],
        "relationships": {
            r: [sorted(ids) for ids in obj.relationships[r]] for r in RELATIONS
        },
        "provenance": None if obj.provenance is None else to_json(obj.provenance),
    }


def scene_to_json(scene: Scene, /) -> dict[str, Any]:
    """Encode a scene as a JSON-compatible dict.

    Examples
    --------
    >>> from clevrshift.scenes import GenConfig, sample_scene, scene_from_json, scene_to_json
    >>> scene = sample_scene(GenConfig.from_variants("hard"), 4)
    >>> scene_from_json(scene_to_json(scene)) == scene
    True

    """
    return to_json(scene)


def scene_from_json(data: Mapping[str, Any], /) -> Scene:
    """Decode a scene written by :func:`scene_to_json`.

    Relationships are re-derived from positions when the record has none.
    """
    try:
        objects = tuple(_object_from_json(i, o) for i, o in enumerate(data["objects"]))
        rel = data.get("relationships")
        relationships = (
            derive_relations(objects)
            if rel is None
            else {r: [frozenset(ids) for ids in rel[r]] for r in RELATIONS}
        )
        prov = data.get("provenance")
        return Scene(
            scene_id=int(data["image_index"]),
            objects=objects,
            relationships=relationships,
            provenance=None if prov is None else Provenance(
                config_digest=str(prov["config_digest"]),
                seed=int(prov["seed"]),
                split=int(prov.get("split", 0)),
                visual=str(prov.get("visual", "")),
            ),
        )
    except (KeyError, TypeError, ValueError) as e:
        msg = f"malformed scene record: {e!r}"
        raise DataError(msg) from e


def _object_from_json(i: int, o: Mapping[str, Any]) -> ObjectInstance:
    x, y, *_ = o["3d_coords"]
    return ObjectInstance(
        id=int(o.get("id", i)),
        shape=o["shape"],
        category=o["category"],
        size=o["size"],
        color=o["color"],
        material=o["material"],
        position=(x, y),
        rotation=o.get("rotation", 0.0),
        radius=o["radius"],
        parts=tuple(
            PartInstance(
                name=name,
                color=p["color"],
                material=p["material"],
                texture=p.get("texture"),
            )
            for name, p in o.get("parts", {}).items()
        ),
        texture=o.get("texture"),
    )


# =============================================================================


def dump_scenes(path: str | Path, scenes: Iterable[Scene], /, **info: Any) -> Path:
    """Write scenes to ``path``; ``info`` entries go to the header."""
    payload = {
        "info": info_block("scenes", **info),
        "scenes": [scene_to_json(s) for s in scenes],
    }
    return dump_json(path, payload)


def load_scenes(path: str | Path, /) -> tuple[list[Scene], dict[str, Any]]:
    """Read a scene file, returning the scenes and the ``info`` header."""
    payload = load_json(path, kind="scenes")
    return [scene_from_json(s) for s in payload["scenes"]], payload["info"]
