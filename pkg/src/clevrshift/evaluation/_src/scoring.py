"""Exact-match scoring of predictions against gold answers."""

__all__ = ["GoldQuestion", "ScoreReport", "score"]

from collections.abc import Iterable, Mapping
from typing import Any, Protocol, final

import equinox as eqx

from xmmutablemap import ImmutableMap

from clevrshift.errors import AlignmentError
from clevrshift.programs import Answer


class GoldQuestion(Protocol):
    question_index: int
    family: str
    answer: Answer


@final
class ScoreReport(eqx.Module):  # type: ignore[misc]
    """Accuracy over a question set."""

    accuracy: float = eqx.field(static=True)
    n: int = eqx.field(static=True)
    correct: int = eqx.field(static=True)
    per_family: ImmutableMap[str, float] = eqx.field(static=True, converter=ImmutableMap)
    """Accuracy of each question family present in the gold set."""

    def to_dict(self) -> dict[str, Any]:
        return {
            "accuracy": self.accuracy,
            "n": self.n,
            "correct": self.correct,
            "per_family": dict(sorted(self.per_family.items())),
        }


def score(
    predictions: Mapping[int, Answer | None], gold: Iterable[GoldQuestion], /
) -> ScoreReport:
    """Score ``predictions`` (question index -> answer) against ``gold``.

    Integers and booleans must match exactly; attribute answers match up to
    case. A missing answer (`None`) is wrong.

    Raises
    ------
    AlignmentError
        If either side is empty or the question indices differ.

    Examples
    --------
    >>> from types import SimpleNamespace as Q
    >>> from clevrshift.evaluation import score
    >>> from clevrshift.programs import Answer

    >>> gold = [Q(question_index=i, family="count", answer=Answer.from_value(v))
    ...         for i, v in enumerate([1, 2, 3, 4])]
    >>> pred = {0: Answer.from_value(1), 1: Answer.from_value(2),
    ...         2: Answer.from_value(3), 3: None}
    >>> score(pred, gold).accuracy
    0.75

    """
    gold = {q.question_index: q for q in gold}
    if not gold or not predictions:
        msg = "cannot score an empty prediction or gold set"
        raise AlignmentError(msg)
    if missing := set(gold) ^ set(predictions):
        shown = sorted(missing)[:5]
        msg = f"predictions and gold disagree on {len(missing)} question ids, e.g. {shown}"
        raise AlignmentError(msg)

    hits: dict[str, list[bool]] = {}
    for i, q in sorted(gold.items()):
        p = predictions[i]
        hits.setdefault(q.family, []).append(p is not None and p.matches(q.answer))

    correct = sum(sum(h) for h in hits.values())
    return ScoreReport(
        accuracy=correct / len(gold),
        n=len(gold),
        correct=correct,
        per_family={f: sum(h) / len(h) for f, h in hits.items()},
    )
