"""Test template loading and slot checks."""

import json
from pathlib import Path

import pytest

from clevrshift.errors import TemplateError
from clevrshift.questions import (
    FAMILIES,
    Template,
    default_templates,
    load_templates,
)

SCENE = {"function": "scene", "inputs": [], "value_inputs": []}


def record(text: str, *ops: dict, family: str = "count", tid: str = "t") -> dict:
    return {"id": tid, "family": family, "text": text, "program": [SCENE, *ops]}


def write(path: Path, *records: dict) -> Path:
    path.write_text(
        json.dumps({"info": {"kind": "templates", "format_version": "1.0"}, "templates": records})
    )
    return path


COUNT_SHAPE = (
    {"function": "filter_shape", "inputs": [0], "value_inputs": ["<S>"]},
    {"function": "count", "inputs": [1], "value_inputs": []},
)


class TestDefaultTemplates:
    def test_every_family(self) -> None:
        assert {t.family for t in default_templates().values()} == set(FAMILIES)

    def test_ids_are_keys(self) -> None:
        assert all(k == t.id for k, t in default_templates().items())

    def test_copy(self) -> None:
        templates = default_templates()
        templates.clear()
        assert default_templates()

    def test_texture_templates(self) -> None:
        templates = default_templates()
        assert templates["query_texture"].requires_texture
        assert not templates["query_color"].requires_texture

    def test_part_templates(self) -> None:
        part = [t for t in default_templates().values() if t.is_part]
        assert part
        assert all(
            any(op.function == "object_to_part" for op in t.skeleton.ops) for t in part
        )


class TestLoadTemplates:
    def test_custom_file(self, tmp_path: Path) -> None:
        path = write(tmp_path / "t.json", record("How many <S>s are there?", *COUNT_SHAPE))
        templates = load_templates(path)
        assert list(templates) == ["t"]
        assert isinstance(templates["t"], Template)

    def test_missing_slot(self, tmp_path: Path) -> None:
        path = write(tmp_path / "t.json", record("How many things are there?", *COUNT_SHAPE))
        with pytest.raises(TemplateError, match="missing from text"):
            load_templates(path)

    def test_extra_slot(self, tmp_path: Path) -> None:
        path = write(tmp_path / "t.json", record("How many <S>s and <S2>s?", *COUNT_SHAPE))
        with pytest.raises(TemplateError, match="have no referent"):
            load_templates(path)

    def test_fixed_literal(self, tmp_path: Path) -> None:
        ops = (
            {"function": "filter_shape", "inputs": [0], "value_inputs": ["sedan"]},
            COUNT_SHAPE[1],
        )
        path = write(tmp_path / "t.json", record("How many <S>s are there?", *ops))
        with pytest.raises(TemplateError, match="fixed literal"):
            load_templates(path)

    def test_unknown_family(self, tmp_path: Path) -> None:
        rec = record("How many <S>s are there?", *COUNT_SHAPE, family="riddle")
        with pytest.raises(TemplateError, match="unknown family"):
            load_templates(write(tmp_path / "t.json", rec))

    def test_duplicate_id(self, tmp_path: Path) -> None:
        rec = record("How many <S>s are there?", *COUNT_SHAPE)
        with pytest.raises(TemplateError, match="duplicate"):
            load_templates(write(tmp_path / "t.json", rec, rec))

    def test_empty(self, tmp_path: Path) -> None:
        with pytest.raises(TemplateError, match="no templates"):
            load_templates(write(tmp_path / "t.json"))

    def test_bad_program(self, tmp_path: Path) -> None:
        rec = record("How many <S>s are there?", COUNT_SHAPE[0])
        with pytest.raises(TemplateError, match="final result"):
            load_templates(write(tmp_path / "t.json", rec))
