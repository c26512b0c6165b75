"""Perceived-scene JSON files.

::

    {"info": {"kind": "perceived", "format_version": ..., "axes": {...}, ...},
     "scenes": [
        {"image_index": 0, "pixels_per_unit": 48.0,
         "detections": [
            {"gt_id": 3, "center": [x, y], "shape": [...], "color": [...],
             "material": [...], "size": [...], ["texture": [...]],
             "parts": [{"name": ..., "color": [...], "material": [...],
                        ["texture": [...]]}]}]}]}

Tables are listed in the canonical order of their axis, recorded in
``info.axes``. ``gt_id`` is ``-1`` for spurious detections.
"""

__all__ = ["perceived_to_json", "perceived_from_json", "dump_perceived", "load_perceived"]

from collections.abc import Iterable, Mapping
from pathlib import Path
from typing import Any

import numpy as np
from plum import dispatch

from .core import OBJECT_AXES, PART_AXES, PerceivedScene
from clevrshift.concepts import ConceptVocabulary, default_vocabulary
from clevrshift.errors import DataError
from clevrshift.utils import dump_json, info_block, load_json


@dispatch
def to_json(obj: PerceivedScene, /) -> dict[str, Any]:
    tables = {a: obj.table(a) for a in OBJECT_AXES}
    part_tables = {a: obj.part_table(a) for a in PART_AXES}
    owners = np.asarray(obj.part_owner).tolist()

    detections: list[dict[str, Any]] = []
    for i in range(obj.n):
        det: dict[str, Any] = {
            "gt_id": obj.gt_ids[i],
            "center": np.asarray(obj.centers[i]).tolist(),
        }
        det.update(
            {a: np.asarray(t[i]).tolist() for a, t in tables.items() if t is not None}
        )
        det["parts"] = [
            {"name": obj.part_names[j]}
            | {a: np.asarray(t[j]).tolist() for a, t in part_tables.items() if t is not None}
            for j, owner in enumerate(owners)
            if owner == i
        ]
        detections.append(det)
    return {
        "image_index": obj.scene_id,
        "pixels_per_unit": obj.pixels_per_unit,
        "detections": detections,
    }


def perceived_to_json(pscene: PerceivedScene, /) -> dict[str, Any]:
    return to_json(pscene)


def perceived_from_json(
    data: Mapping[str, Any], /, *, vocab: ConceptVocabulary | None = None
) -> PerceivedScene:
    """Decode a record written by :func:`perceived_to_json`."""
    vocab = default_vocabulary() if vocab is None else vocab
    try:
        dets = list(data["detections"])
        textured = bool(dets) and "texture" in dets[0]

        def table(rows: list[Any], axis: str) -> np.ndarray:
            k = len(vocab.values(axis))
            return np.asarray(rows, dtype=float).reshape(len(rows), k)

        parts = [(i, p) for i, d in enumerate(dets) for p in d["parts"]]
        return PerceivedScene(
            centers=np.asarray([d["center"] for d in dets], dtype=float).reshape(len(dets), 2),
            shape=table([d["shape"] for d in dets], "shape"),
            color=table([d["color"] for d in dets], "color"),
            material=table([d["material"] for d in dets], "material"),
            size=table([d["size"] for d in dets], "size"),
            texture=table([d["texture"] for d in dets], "texture") if textured else None,
            part_owner=np.asarray([i for i, _ in parts], dtype=int),
            part_color=table([p["color"] for _, p in parts], "color"),
            part_material=table([p["material"] for _, p in parts], "material"),
            part_texture=table([p["texture"] for _, p in parts], "texture") if textured else None,
            part_names=[p["name"] for _, p in parts],
            gt_ids=[int(d["gt_id"]) for d in dets],
            scene_id=int(data["image_index"]),
            pixels_per_unit=data["pixels_per_unit"],
        )
    except (KeyError, TypeError, ValueError) as e:
        msg = f"malformed perceived-scene record: {e!r}"
        raise DataError(msg) from e


def dump_perceived(
    path: str | Path,
    pscenes: Iterable[PerceivedScene],
    /,
    *,
    vocab: ConceptVocabulary | None = None,
    **info: Any,
) -> Path:
    vocab = default_vocabulary() if vocab is None else vocab
    axes = {a: list(vocab.values(a)) for a in OBJECT_AXES}
    payload = {
        "info": info_block("perceived", axes=axes, **info),
        "scenes": [perceived_to_json(p) for p in pscenes],
    }
    return dump_json(path, payload)


def load_perceived(
    path: str | Path, /, *, vocab: ConceptVocabulary | None = None
) -> tuple[list[PerceivedScene], dict[str, Any]]:
    payload = load_json(path, kind="perceived")
    return [perceived_from_json(s, vocab=vocab) for s in payload["scenes"]], payload["info"]
