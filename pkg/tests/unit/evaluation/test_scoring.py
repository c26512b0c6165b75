"""Test exact-match scoring."""

from types import SimpleNamespace as Q

import pytest

from clevrshift.errors import AlignmentError
from clevrshift.evaluation import score
from clevrshift.programs import Answer


def gold(*values: object, family: str = "count") -> list[Q]:
    return [
        Q(question_index=i, family=family, answer=Answer.from_value(v))
        for i, v in enumerate(values)
    ]


class TestScore:
    def test_accuracy(self) -> None:
        g = gold(1, 2, 3, 4)
        pred = {0: Answer.from_value(1), 1: Answer.from_value(2),
                2: Answer.from_value(3), 3: Answer.from_value(5)}  # fmt: skip
        report = score(pred, g)
        assert (report.accuracy, report.n, report.correct) == (0.75, 4, 3)

    def test_missing_answer_is_wrong(self) -> None:
        report = score({0: None, 1: Answer.from_value(True)}, gold(False, True))
        assert report.accuracy == 0.5

    def test_case_insensitive_attributes(self) -> None:
        report = score({0: Answer.from_value("Red")}, gold("red", family="query"))
        assert report.accuracy == 1.0

    def test_no_cross_kind_match(self) -> None:
        # an integer answer never matches a boolean one
        report = score({0: Answer.from_value(1)}, gold(True, family="exist"))
        assert report.accuracy == 0.0

    def test_per_family(self) -> None:
        g = [*gold(1, 2), Q(question_index=2, family="exist", answer=Answer.from_value(True))]
        pred = {0: Answer.from_value(1), 1: Answer.from_value(0), 2: Answer.from_value(True)}
        report = score(pred, g)
        assert dict(report.per_family) == {"count": 0.5, "exist": 1.0}
        assert report.to_dict()["per_family"] == {"count": 0.5, "exist": 1.0}

    def test_misaligned(self) -> None:
        with pytest.raises(AlignmentError, match="disagree on 2 question ids"):
            score({0: None, 5: None}, gold(1, 2))

    @pytest.mark.parametrize(
        ("pred", "g"), [({}, gold(1)), ({0: Answer.from_value(1)}, [])]
    )
    def test_empty(self, pred: dict, g: list) -> None:
        with pytest.raises(AlignmentError, match="empty"):
            score(pred, g)
