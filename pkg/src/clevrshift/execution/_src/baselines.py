"""Answer-prior baselines that ignore the scene."""

__all__ = ["AnsweredQuestion", "predict_majority", "predict_random"]

from collections import Counter
from collections.abc import Iterable
from typing import Protocol

from .batch import Predictions, QuestionLike
from clevrshift.programs import Answer
from clevrshift.utils import RandomStream, derive_key


class AnsweredQuestion(Protocol):
    question_index: int
    family: str
    answer: Answer


def _key(a: Answer) -> tuple[str, str]:
    return a.kind, repr(a.value)


def _answers_by_family(train: Iterable[AnsweredQuestion]) -> dict[str, Counter[Answer]]:
    by_family: dict[str, Counter[Answer]] = {}
    for q in train:
        by_family.setdefault(q.family, Counter())[q.answer] += 1
    return by_family


def _most_common(counts: Counter[Answer]) -> Answer:
    # Ties go to the smallest answer so the choice never depends on input order.
    best = max(counts.values())
    return min((a for a, c in counts.items() if c == best), key=_key)


class _Test(QuestionLike, Protocol):
    family: str


def predict_majority(
    train: Iterable[AnsweredQuestion], test: Iterable[_Test], /
) -> Predictions:
    """Predict the most frequent training answer of each question family.

    Families never seen in training get the overall most frequent answer.

    Examples
    --------
    >>> from types import SimpleNamespace as Q
    >>> from clevrshift.execution import predict_majority
    >>> from clevrshift.programs import Answer
    >>> train = [Q(question_index=i, family="count", answer=Answer.from_value(v))
    ...          for i, v in enumerate([2, 3, 2])]
    >>> test = [Q(question_index=7, scene_id=0, family="count", program=None)]
    >>> predict_majority(train, test)
    {7: Answer(kind='integer', value=2)}

    """
    by_family = _answers_by_family(train)
    overall: Counter[Answer] = sum(by_family.values(), Counter())
    fallback = _most_common(overall) if overall else None
    majority = {f: _most_common(c) for f, c in by_family.items()}
    return {
        q.question_index: majority.get(q.family, fallback)
        for q in sorted(test, key=lambda q: q.question_index)
    }


def predict_random(
    train: Iterable[AnsweredQuestion], test: Iterable[_Test], /, *, seed: int = 0
) -> Predictions:
    """Predict an answer drawn uniformly from those seen for the family."""
    by_family = _answers_by_family(train)
    choices = {f: sorted(c, key=_key) for f, c in by_family.items()}
    everything = sorted({a for c in by_family.values() for a in c}, key=_key)
    stream = RandomStream(derive_key(seed))

    out: Predictions = {}
    for q in sorted(test, key=lambda q: q.question_index):
        pool = choices.get(q.family, everything)
        out[q.question_index] = stream.choice(pool) if pool else None
    return out
