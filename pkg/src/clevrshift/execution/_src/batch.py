"""Batch execution and prediction files.

A prediction file is::

    {"info": {"kind": "predictions", "format_version": ..., "mode": ...},
     "predictions": [{"question_index": 0, "answer": "red"}, ...]}

sorted by ``question_index``. A question whose execution failed at run time
has ``"answer": null`` and counts as wrong.
"""

__all__ = [
    "QuestionLike",
    "Predictions",
    "predict_det",
    "predict_prob",
    "predict_hardened",
    "dump_predictions",
    "load_predictions",
]

import logging
from collections.abc import Iterable, Mapping
from pathlib import Path
from typing import Any, Protocol, TypeAlias

from .deterministic import execute
from .probabilistic import ProbExecConfig, execute_prob
from clevrshift.concepts import ConceptVocabulary
from clevrshift.errors import DataError, DegenerateLayoutError, ExecutionError
from clevrshift.perception import PerceivedScene, harden
from clevrshift.programs import Answer, Program
from clevrshift.scenes import Scene
from clevrshift.utils import dump_json, info_block, load_json

logger = logging.getLogger(__name__)

Predictions: TypeAlias = dict[int, Answer | None]


class QuestionLike(Protocol):
    question_index: int
    scene_id: int
    program: Program


def _lookup(mapping: Mapping[int, Any], q: QuestionLike) -> Any:
    try:
        return mapping[q.scene_id]
    except KeyError:
        msg = f"question {q.question_index} refers to unknown scene {q.scene_id}"
        raise DataError(msg) from None


def predict_det(questions: Iterable[QuestionLike], scenes: Mapping[int, Scene], /) -> Predictions:
    """Run the deterministic executor on ground-truth (or hardened) scenes."""
    out: Predictions = {}
    for q in questions:
        try:
            out[q.question_index] = execute(q.program, _lookup(scenes, q))
        except ExecutionError as e:
            logger.debug("question %d failed: %s", q.question_index, e)
            out[q.question_index] = None
    return out


def predict_prob(
    questions: Iterable[QuestionLike],
    pscenes: Mapping[int, PerceivedScene],
    cfg: ProbExecConfig | None = None,
    /,
    *,
    vocab: ConceptVocabulary | None = None,
) -> Predictions:
    """Run the probabilistic executor on perceived scenes."""
    out: Predictions = {}
    for q in questions:
        try:
            out[q.question_index] = execute_prob(q.program, _lookup(pscenes, q), cfg, vocab=vocab)
        except ExecutionError as e:
            logger.debug("question %d failed: %s", q.question_index, e)
            out[q.question_index] = None
    return out


def predict_hardened(
    questions: Iterable[QuestionLike],
    pscenes: Mapping[int, PerceivedScene],
    /,
    *,
    vocab: ConceptVocabulary | None = None,
) -> Predictions:
    """Harden each perceived scene, then run the deterministic executor.

    A perceived scene that cannot be hardened (two detections sharing a
    coordinate) fails every question on it.
    """
    questions = list(questions)
    hardened: dict[int, Scene] = {}
    failed: set[int] = set()
    for q in questions:
        sid = q.scene_id
        if sid in hardened or sid in failed:
            continue
        try:
            hardened[sid] = harden(_lookup(pscenes, q), vocab=vocab)
        except DegenerateLayoutError as e:
            logger.debug("scene %d cannot be hardened: %s", sid, e)
            failed.add(sid)

    out = predict_det([q for q in questions if q.scene_id in hardened], hardened)
    out |= {q.question_index: None for q in questions if q.scene_id in failed}
    return dict(sorted(out.items()))


# =============================================================================


def dump_predictions(path: str | Path, predictions: Predictions, /, **info: Any) -> Path:
    payload = {
        "info": info_block("predictions", **info),
        "predictions": [
            {"question_index": i, "answer": None if a is None else a.to_json()}
            for i, a in sorted(predictions.items())
        ],
    }
    return dump_json(path, payload)


def load_predictions(path: str | Path, /) -> Predictions:
    payload = load_json(path, kind="predictions")
    out: Predictions = {}
    try:
        for rec in payload["predictions"]:
            a = rec["answer"]
            out[int(rec["question_index"])] = None if a is None else Answer.from_value(a)
    except (KeyError, TypeError, ValueError) as e:
        msg = f"malformed prediction file {path}: {e!r}"
        raise DataError(msg) from e
    return out
