"""Parsing and serializing CLEVR-style program records.

A program is stored as a list of records ``{"function", "inputs",
"value_inputs"}``, exactly those three keys in that order.
"""

__all__ = ["parse_program", "serialize_program", "check_literals", "literal_choices"]

from collections.abc import Mapping, Sequence
from typing import Any

from .core import Operation, Program
from .signatures import SIGNATURES, resolve_signature
from clevrshift.concepts import ConceptVocabulary
from clevrshift.errors import InvalidLiteralError, ProgramParseError
from clevrshift.scenes import RELATIONS

_KEYS = ("function", "inputs", "value_inputs")


def parse_program(
    records: Sequence[Mapping[str, Any]], /, *, vocab: ConceptVocabulary | None = None
) -> Program:
    """Parse and typecheck a record list.

    Parameters
    ----------
    records : Sequence[Mapping[str, Any]]
        The serialized program.
    vocab : ConceptVocabulary, optional
        When given, literals are also checked against it. Template skeletons
        hold placeholders, so they are parsed without one.

    Examples
    --------
    >>> from clevrshift.programs import parse_program
    >>> prog = parse_program([
    ...     {"function": "scene", "inputs": [], "value_inputs": []},
    ...     {"function": "count", "inputs": [0], "value_inputs": []}])
    >>> prog.answer_type
    <ValueType.INTEGER: 'integer'>

    >>> parse_program([
    ...     {"function": "scene", "inputs": [], "value_inputs": []},
    ...     {"function": "unique", "inputs": [5], "value_inputs": []}])
    Traceback (most recent call last):
    ...
    clevrshift.errors.ProgramParseError: operation 1: input 5 does not reference an earlier operation

    """
    if isinstance(records, (str, bytes)) or not isinstance(records, Sequence):
        msg = "a program must be a list of operation records"
        raise ProgramParseError(None, msg)

    ops = tuple(_parse_op(i, r) for i, r in enumerate(records))
    program = Program.from_ops(ops)
    if vocab is not None:
        check_literals(program, vocab)
    return program


def _parse_op(i: int, record: Mapping[str, Any]) -> Operation:
    if not isinstance(record, Mapping):
        msg = "operation record must be an object"
        raise ProgramParseError(i, msg)
    if set(record) != set(_KEYS):
        msg = f"operation record must have exactly the keys {list(_KEYS)}, got {sorted(record)}"
        raise ProgramParseError(i, msg)

    function, inputs, values = (record[k] for k in _KEYS)
    if not isinstance(function, str):
        msg = "function must be a string"
        raise ProgramParseError(i, msg)
    if function not in SIGNATURES:
        msg = f"unknown function {function!r}"
        raise ProgramParseError(i, msg)
    if not isinstance(inputs, list) or not all(
        isinstance(j, int) and not isinstance(j, bool) for j in inputs
    ):
        msg = "inputs must be a list of integers"
        raise ProgramParseError(i, msg)
    if not isinstance(values, list) or not all(isinstance(v, str) for v in values):
        msg = "value_inputs must be a list of strings"
        raise ProgramParseError(i, msg)
    return Operation(function, inputs, values)


def serialize_program(program: Program, /) -> list[dict[str, Any]]:
    """Return the record list of ``program``."""
    return program.to_records()


def literal_choices(axis: str, vocab: ConceptVocabulary, /) -> tuple[str, ...]:
    """Admissible literals for a signature's literal axis."""
    if axis == "relation":
        return RELATIONS
    return vocab.values(axis)


def check_literals(program: Program, vocab: ConceptVocabulary, /) -> None:
    """Raise :class:`InvalidLiteralError` if a literal is not in ``vocab``."""
    for i, op in enumerate(program.ops):
        sig = resolve_signature(op.function, [program.types[j] for j in op.inputs], index=i)
        if sig.literal is None:
            continue
        if op.value not in literal_choices(sig.literal, vocab):
            msg = f"operation {i}: {op.value!r} is not a known {sig.literal}"
            raise InvalidLiteralError(msg)
