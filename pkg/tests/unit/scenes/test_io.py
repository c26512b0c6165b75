"""Test scene files."""

import json
from pathlib import Path

import pytest

from clevrshift.errors import DataError
from clevrshift.scenes import (
    GenConfig,
    dump_scenes,
    load_scenes,
    sample_scene,
    scene_from_json,
    scene_to_json,
)

from .._scenes import street_scene


class TestSceneRecords:
    def test_record_layout(self) -> None:
        record = scene_to_json(street_scene())
        assert record["image_index"] == 0
        bus = record["objects"][0]
        assert bus["shape"] == "school bus"
        assert bus["3d_coords"][:2] == [-3.0, 0.0]
        assert bus["parts"]["door"] == {"color": "blue", "material": "rubber"}
        assert record["relationships"]["left"][1] == [0]

    def test_relationships_rederived(self) -> None:
        scene = street_scene()
        record = scene_to_json(scene)
        del record["relationships"]
        assert scene_from_json(record) == scene

    def test_malformed(self) -> None:
        with pytest.raises(DataError, match="malformed scene"):
            scene_from_json({"objects": []})


class TestSceneFiles:
    def test_round_trip(self, tmp_path: Path) -> None:
        cfg = GenConfig.from_variants("hard", seed=1)
        scenes = [sample_scene(cfg, i) for i in range(3)]
        path = dump_scenes(tmp_path / "scenes.json", scenes, split="train")
        loaded, info = load_scenes(path)
        assert loaded == scenes
        assert info["kind"] == "scenes"
        assert info["split"] == "train"

    def test_bytes_are_stable(self, tmp_path: Path) -> None:
        scenes = [street_scene()]
        a = dump_scenes(tmp_path / "a.json", scenes).read_bytes()
        b = dump_scenes(tmp_path / "b.json", scenes).read_bytes()
        assert a == b

    def test_wrong_kind(self, tmp_path: Path) -> None:
        path = tmp_path / "q.json"
        path.write_text(json.dumps({"info": {"kind": "questions", "format_version": "1.0"}}))
        with pytest.raises(DataError, match="not a 'scenes' file"):
            load_scenes(path)

    def test_future_format(self, tmp_path: Path) -> None:
        path = tmp_path / "s.json"
        path.write_text(json.dumps({"info": {"kind": "scenes", "format_version": "2.0"}}))
        with pytest.raises(DataError, match="format_version"):
            load_scenes(path)
