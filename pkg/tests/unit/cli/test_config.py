"""Test option resolution and configuration files."""

import json
from pathlib import Path

import pytest

from clevrshift.cli import (
    DEFAULTS,
    load_config_file,
    parse_questions_per_scene,
    resolve,
    vocabulary_from,
    write_provenance,
)
from clevrshift.concepts import default_vocabulary
from clevrshift.errors import DataError, InvalidParameterError


class TestResolve:
    def test_precedence(self) -> None:
        file_config = {"generate": {"num_scenes": 50, "visual": "easy"}}
        cfg = resolve("generate", {"num_scenes": 5}, file_config)
        assert (cfg["num_scenes"], cfg["visual"]) == (5, "easy")
        assert cfg["dist"] == DEFAULTS["generate"]["dist"]

    def test_defaults_only(self) -> None:
        assert resolve("execute", {}, {}) == dict(DEFAULTS["execute"])

    def test_unknown_file_option(self) -> None:
        with pytest.raises(InvalidParameterError, match="unknown perturb options"):
            resolve("perturb", {}, {"perturb": {"blur": 1.0}})

    @pytest.mark.parametrize("seed", [-1, 2**64])
    def test_seed_range(self, seed: int) -> None:
        with pytest.raises(InvalidParameterError, match="64-bit"):
            resolve("generate", {"seed": seed}, {})

    def test_jobs(self) -> None:
        with pytest.raises(InvalidParameterError, match="jobs"):
            resolve("generate", {"jobs": 0}, {})


class TestConfigFile:
    def test_none(self) -> None:
        assert load_config_file(None) == {}

    def test_flag_spelling(self, tmp_path: Path) -> None:
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps({"generate": {"--num-scenes": 7, "split": "val"}}))
        assert load_config_file(path) == {"generate": {"num_scenes": 7, "split": "val"}}

    def test_unknown_section(self, tmp_path: Path) -> None:
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps({"render": {}}))
        with pytest.raises(InvalidParameterError, match="unknown config sections"):
            load_config_file(path)

    def test_not_an_object(self, tmp_path: Path) -> None:
        path = tmp_path / "cfg.json"
        path.write_text("[1, 2]")
        with pytest.raises(InvalidParameterError, match="JSON object"):
            load_config_file(path)

    def test_not_json(self, tmp_path: Path) -> None:
        path = tmp_path / "cfg.json"
        path.write_text("{")
        with pytest.raises(DataError, match="not valid JSON"):
            load_config_file(path)

    def test_vocabulary(self) -> None:
        assert vocabulary_from({}) == default_vocabulary()


class TestQuestionsPerScene:
    @pytest.mark.parametrize(
        ("grid", "expected"),
        [
            ("object=10,part=10", (10, 10)),
            ("part=3", (10, 3)),
            ("object=0, part=0", (0, 0)),
            ({"object": 2}, (2, 10)),
        ],
    )
    def test_parse(self, grid: str, expected: tuple[int, int]) -> None:
        assert parse_questions_per_scene(grid) == expected

    @pytest.mark.parametrize(
        ("grid", "match"),
        [
            ("object=ten", "must look like"),
            ("object", "must look like"),
            ("scene=3", "unknown question kinds"),
            ("object=-1", "non-negative"),
        ],
    )
    def test_invalid(self, grid: str, match: str) -> None:
        with pytest.raises(InvalidParameterError, match=match):
            parse_questions_per_scene(grid)


def test_provenance(tmp_path: Path) -> None:
    resolved = resolve("perturb", {"epsilon": 0.2}, {})
    path = write_provenance(tmp_path, "perturb", resolved, vocabulary={"colors": ["red"]})
    payload = json.loads(path.read_text())
    assert path.name == "perturb.provenance.json"
    assert payload["info"]["kind"] == "provenance"
    assert payload["info"]["command"] == "perturb"
    assert payload["config"]["epsilon"] == 0.2
    assert list(payload["config"]) == sorted(payload["config"])
    assert payload["vocabulary"] == {"colors": ["red"]}
