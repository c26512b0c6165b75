"""Question JSON files.

::

    {"info": {"kind": "questions", "format_version": ..., ...},
     "questions": [
        {"question_index": 0, "image_index": 0, "question": "...",
         "program": [{"function", "inputs", "value_inputs"}, ...],
         "answer": "red" | 3 | true, "template_id": "...",
         "question_family": "...", "redundancy_variant": "rd"}]}
"""

__all__ = ["question_to_json", "question_from_json", "dump_questions", "load_questions"]

from collections.abc import Iterable, Mapping
from pathlib import Path
from typing import Any

from plum import dispatch

from .generate import QuestionRecord
from clevrshift.concepts import ConceptVocabulary
from clevrshift.errors import DataError, InvalidParameterError
from clevrshift.programs import Answer, parse_program, serialize_program
from clevrshift.utils import dump_json, info_block, load_json


@dispatch
def to_json(obj: QuestionRecord, /) -> dict[str, Any]:
    return {
        "question_index": obj.question_index,
        "image_index": obj.scene_id,
        "question": obj.text,
        "program": serialize_program(obj.program),
        "answer": obj.answer.to_json(),
        "template_id": obj.template_id,
        "question_family": obj.family,
        "redundancy_variant": obj.redundancy_variant,
    }


def question_to_json(question: QuestionRecord, /) -> dict[str, Any]:
    return to_json(question)


def question_from_json(
    data: Mapping[str, Any], /, *, vocab: ConceptVocabulary | None = None
) -> QuestionRecord:
    """Decode a record written by :func:`question_to_json`.

    The program is typechecked, and its literals checked when ``vocab`` is
    given.
    """
    try:
        return QuestionRecord(
            scene_id=int(data["image_index"]),
            text=str(data["question"]),
            program=parse_program(data["program"], vocab=vocab),
            answer=Answer.from_value(data["answer"]),
            template_id=str(data.get("template_id", "")),
            family=str(data.get("question_family", "")),
            redundancy_variant=str(data.get("redundancy_variant", "rd")),
            question_index=int(data["question_index"]),
        )
    except (KeyError, TypeError, InvalidParameterError) as e:
        msg = f"malformed question record: {e!r}"
        raise DataError(msg) from e


def dump_questions(path: str | Path, questions: Iterable[QuestionRecord], /, **info: Any) -> Path:
    payload = {
        "info": info_block("questions", **info),
        "questions": [question_to_json(q) for q in questions],
    }
    return dump_json(path, payload)


def load_questions(
    path: str | Path, /, *, vocab: ConceptVocabulary | None = None
) -> tuple[list[QuestionRecord], dict[str, Any]]:
    """Read a question file, returning the records and the ``info`` header."""
    payload = load_json(path, kind="questions")
    questions = [question_from_json(q, vocab=vocab) for q in payload["questions"]]
    return questions, payload["info"]
