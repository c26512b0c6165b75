"""Test grid manifests and file scoring."""

import json
from pathlib import Path

import pytest

from clevrshift.errors import DataError, IncompleteGridError
from clevrshift.evaluation import evaluate_manifest, load_manifest, score_files
from clevrshift.execution import dump_predictions
from clevrshift.programs import Answer
from clevrshift.questions import QuestionRecord, dump_questions

from .._scenes import chain

COUNT = chain(("scene",), ("count",))


def write_gold(path: Path, answers: list[int]) -> Path:
    questions = [
        QuestionRecord(
            scene_id=i,
            text="How many things are there?",
            program=COUNT,
            answer=Answer.from_value(a),
            template_id="count",
            family="count",
            redundancy_variant="rd",
            question_index=i,
        )
        for i, a in enumerate(answers)
    ]
    return dump_questions(path, questions)


def write_pred(path: Path, answers: list[int | None]) -> Path:
    preds = {i: None if a is None else Answer.from_value(a) for i, a in enumerate(answers)}
    return dump_predictions(path, preds, mode="det")


@pytest.fixture
def gold(tmp_path: Path) -> Path:
    return write_gold(tmp_path / "data" / "questions.json", [3, 4, 5, 6])


class TestScoreFiles:
    def test_score(self, tmp_path: Path, gold: Path) -> None:
        pred = write_pred(tmp_path / "pred.json", [3, 4, 5, None])
        assert score_files(pred, gold).accuracy == 0.75

    def test_wrong_kind(self, gold: Path) -> None:
        with pytest.raises(DataError, match="not a 'predictions' file"):
            score_files(gold, gold)


class TestManifest:
    def write_manifest(self, root: Path, cells: dict[tuple[str, str], list]) -> Path:
        entries = []
        for (train, test), answers in cells.items():
            name = f"preds/{train}_{test}.json"
            write_pred(root / name, answers)
            entries.append(
                {"train": train, "test": test, "predictions": name,
                 "gold": "data/questions.json"}
            )  # fmt: skip
        path = root / "grid.json"
        path.write_text(json.dumps({"factor": "visual", "cells": entries}))
        return path

    def test_relative_paths(self, tmp_path: Path, gold: Path) -> None:
        path = self.write_manifest(tmp_path, {("easy", "easy"): [3, 4, 5, 6]})
        manifest = load_manifest(path)
        assert manifest.factor == "visual"
        assert manifest.cells[0].gold == gold

    def test_evaluate(self, tmp_path: Path, gold: Path) -> None:
        v = ("easy", "mid", "hard")
        cells = {(i, j): [3, 4, 5, 6] if i == j else [3, 4, 5, 0] for i in v for j in v}
        grid, rd = evaluate_manifest(self.write_manifest(tmp_path, cells))
        assert grid["easy", "easy"] == 1.0
        assert grid["hard", "mid"] == 0.75
        assert rd.percent == 25.0

    def test_incomplete(self, tmp_path: Path, gold: Path) -> None:
        path = self.write_manifest(tmp_path, {("easy", "easy"): [3, 4, 5, 6]})
        with pytest.raises(IncompleteGridError):
            evaluate_manifest(path)

    def test_malformed(self, tmp_path: Path) -> None:
        path = tmp_path / "grid.json"
        path.write_text(json.dumps({"factor": "visual", "cells": [{"train": "easy"}]}))
        with pytest.raises(DataError, match="malformed grid manifest"):
            load_manifest(path)

    def test_missing_file(self, tmp_path: Path) -> None:
        with pytest.raises(DataError, match="no such file"):
            load_manifest(tmp_path / "nope.json")
