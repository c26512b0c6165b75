"""The closed operation set and its signature table."""

__all__ = [
    "ValueType",
    "Signature",
    "SIGNATURES",
    "ANSWER_TYPES",
    "ATTRIBUTE_TYPES",
    "FILTER_AXES",
    "QUERY_AXES",
    "SAME_AXES",
    "EQUAL_AXES",
    "resolve_signature",
]

from collections.abc import Mapping, Sequence
from enum import Enum
from typing import Final, final

import equinox as eqx

from xmmutablemap import ImmutableMap

from clevrshift.errors import ProgramParseError, ProgramTypeError


class ValueType(Enum):
    """Result types of operations.

    Attribute values are tagged with their axis so that, e.g., comparing a
    color with a size fails to typecheck.
    """

    OBJECT_SET = "ObjectSet"
    OBJECT = "Object"
    PART_SET = "PartSet"
    PART = "Part"
    INTEGER = "integer"
    BOOLEAN = "boolean"
    SIZE = "size"
    COLOR = "color"
    MATERIAL = "material"
    SHAPE = "shape"
    TEXTURE = "texture"

    @property
    def is_attribute(self) -> bool:
        return self in ATTRIBUTE_TYPES


ATTRIBUTE_TYPES: Final = frozenset(
    {ValueType.SIZE, ValueType.COLOR, ValueType.MATERIAL, ValueType.SHAPE, ValueType.TEXTURE}
)
ANSWER_TYPES: Final = ATTRIBUTE_TYPES | {ValueType.INTEGER, ValueType.BOOLEAN}


@final
class Signature(eqx.Module):  # type: ignore[misc]
    """One overload of an operation."""

    inputs: tuple[ValueType, ...]
    output: ValueType
    literal: str | None = None
    """Axis of the single literal value input, or `None` for no literal."""

    @property
    def n_literals(self) -> int:
        return 0 if self.literal is None else 1


FILTER_AXES: Final = ("size", "color", "material", "shape", "texture", "category")
QUERY_AXES: Final = ("size", "color", "material", "shape", "texture")
SAME_AXES: Final = ("size", "color", "material", "shape")
EQUAL_AXES: Final = ("size", "color", "material", "shape")

OS, O, PS, P = ValueType.OBJECT_SET, ValueType.OBJECT, ValueType.PART_SET, ValueType.PART
INT, BOOL = ValueType.INTEGER, ValueType.BOOLEAN


def _build_table() -> Mapping[str, tuple[Signature, ...]]:
    table: dict[str, list[Signature]] = {
        "scene": [Signature((), OS)],
        "unique": [Signature((OS,), O), Signature((PS,), P)],
        "relate": [Signature((O,), OS, "relation")],
        "intersect": [Signature((OS, OS), OS)],
        "union": [Signature((OS, OS), OS)],
        "count": [Signature((OS,), INT)],
        "exist": [Signature((OS,), BOOL)],
        "equal_integer": [Signature((INT, INT), BOOL)],
        "less_than": [Signature((INT, INT), BOOL)],
        "greater_than": [Signature((INT, INT), BOOL)],
        "object_to_part": [Signature((O,), PS), Signature((OS,), PS)],
        "part_to_object": [Signature((PS,), OS)],
        "filter_part_name": [Signature((PS,), PS, "part")],
    }
    for axis in FILTER_AXES:
        table[f"filter_{axis}"] = [Signature((OS,), OS, axis)]
    for axis in ("color", "material"):
        table[f"filter_{axis}"].append(Signature((PS,), PS, axis))
    for axis in QUERY_AXES:
        table[f"query_{axis}"] = [Signature((O,), ValueType(axis))]
    for axis in ("color", "material"):
        table[f"query_{axis}"].append(Signature((P,), ValueType(axis)))
    for axis in SAME_AXES:
        table[f"same_{axis}"] = [Signature((O,), OS)]
    for axis in EQUAL_AXES:
        t = ValueType(axis)
        table[f"equal_{axis}"] = [Signature((t, t), BOOL)]
    return ImmutableMap({k: tuple(v) for k, v in table.items()})


SIGNATURES: Final = _build_table()
"""Function name -> overloads, resolved by input types."""


def resolve_signature(
    function: str, input_types: Sequence[ValueType], /, *, index: int | None = None
) -> Signature:
    """Return the overload of ``function`` accepting ``input_types``.

    Examples
    --------
    >>> from clevrshift.programs import ValueType, resolve_signature
    >>> resolve_signature("unique", [ValueType.PART_SET]).output
    <ValueType.PART: 'Part'>

    >>> resolve_signature("query_color", [ValueType.OBJECT_SET], index=2)
    Traceback (most recent call last):
    ...
    clevrshift.errors.ProgramTypeError: operation 2: query_color does not accept (ObjectSet)

    """
    try:
        overloads = SIGNATURES[function]
    except KeyError:
        msg = f"unknown function {function!r}"
        raise ProgramParseError(index, msg) from None

    input_types = tuple(input_types)
    if not any(len(s.inputs) == len(input_types) for s in overloads):
        arities = sorted({len(s.inputs) for s in overloads})
        msg = f"{function} takes {' or '.join(map(str, arities))} inputs, got {len(input_types)}"
        raise ProgramParseError(index, msg)
    for sig in overloads:
        if sig.inputs == input_types:
            return sig
    got = ", ".join(t.value for t in input_types)
    msg = f"{function} does not accept ({got})"
    raise ProgramTypeError(index, msg)
