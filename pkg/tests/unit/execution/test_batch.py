"""Test batch prediction, prediction files and the answer-prior baselines."""

from pathlib import Path
from types import SimpleNamespace as Q

import pytest
from dataclassish import replace

import clevrshift.execution as ce
from clevrshift.errors import DataError
from clevrshift.perception import one_hot
from clevrshift.programs import Answer

from .._scenes import chain, street_scene

COUNT_RED = chain(("scene",), ("filter_color", "red"), ("count",))
SEDAN_COLOR = chain(("scene",), ("filter_shape", "sedan"), ("unique",), ("query_color",))


@pytest.fixture
def questions() -> list[Q]:
    return [
        Q(question_index=0, scene_id=0, family="count", program=COUNT_RED),
        Q(question_index=1, scene_id=0, family="query", program=SEDAN_COLOR),
    ]


class TestPredict:
    def test_det(self, questions: list[Q]) -> None:
        out = ce.predict_det(questions, {0: street_scene()})
        assert out == {0: Answer.from_value(2), 1: None}

    def test_prob(self, questions: list[Q]) -> None:
        out = ce.predict_prob(questions, {0: one_hot(street_scene())})
        assert out[0] == Answer.from_value(2)
        # two one-hot sedans tie; the lowest detection wins
        assert out[1] == Answer.from_value("blue")

    def test_hardened(self, questions: list[Q]) -> None:
        out = ce.predict_hardened(questions, {0: one_hot(street_scene())})
        assert out == {0: Answer.from_value(2), 1: None}

    def test_hardening_failure(self, questions: list[Q]) -> None:
        ps = one_hot(street_scene())
        stacked = replace(ps, centers=[[0.0, 0.0]] * ps.n)
        assert ce.predict_hardened(questions, {0: stacked}) == {0: None, 1: None}

    def test_unknown_scene(self, questions: list[Q]) -> None:
        with pytest.raises(DataError, match="unknown scene 0"):
            ce.predict_det(questions, {})


class TestPredictionFiles:
    def test_round_trip(self, tmp_path: Path) -> None:
        preds = {3: Answer.from_value("red"), 0: Answer.from_value(True), 1: None}
        path = ce.dump_predictions(tmp_path / "p.json", preds, mode="det")
        assert ce.load_predictions(path) == preds
        assert path.read_text().index('"question_index":0') < path.read_text().index(
            '"question_index":3'
        )

    def test_wrong_kind(self, tmp_path: Path) -> None:
        path = tmp_path / "p.json"
        path.write_text('{"info": {"kind": "scenes", "format_version": "1.0"}}')
        with pytest.raises(DataError):
            ce.load_predictions(path)

    def test_malformed(self, tmp_path: Path) -> None:
        path = tmp_path / "p.json"
        path.write_text(
            '{"info": {"kind": "predictions", "format_version": "1.0"},'
            ' "predictions": [{"answer": 1}]}'
        )
        with pytest.raises(DataError, match="malformed"):
            ce.load_predictions(path)


class TestBaselines:
    @pytest.fixture
    def train(self) -> list[Q]:
        answers = [("count", 2), ("count", 3), ("count", 2), ("query", "red"), ("query", "blue")]
        return [
            Q(question_index=i, family=f, answer=Answer.from_value(a))
            for i, (f, a) in enumerate(answers)
        ]

    @pytest.fixture
    def test(self) -> list[Q]:
        families = ["count", "query", "exist"]
        return [
            Q(question_index=i, scene_id=0, family=f, program=None)
            for i, f in enumerate(families)
        ]

    def test_majority(self, train: list[Q], test: list[Q]) -> None:
        out = ce.predict_majority(train, test)
        assert out[0] == Answer.from_value(2)
        # ties go to the smallest answer
        assert out[1] == Answer.from_value("blue")
        # unseen families fall back to the overall majority
        assert out[2] == Answer.from_value(2)

    def test_random(self, train: list[Q], test: list[Q]) -> None:
        a = ce.predict_random(train, test, seed=3)
        assert a == ce.predict_random(train, test, seed=3)
        assert a[0] in {Answer.from_value(2), Answer.from_value(3)}
        assert a[1] in {Answer.from_value("red"), Answer.from_value("blue")}

    def test_random_without_training(self, test: list[Q]) -> None:
        assert ce.predict_random([], test) == {0: None, 1: None, 2: None}
