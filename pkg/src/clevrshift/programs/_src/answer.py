"""Answers produced by executing programs."""

__all__ = ["Answer", "ANSWER_KINDS", "MAX_COUNT"]

from typing import Any, Final, final

import equinox as eqx

from .signatures import ValueType
from clevrshift.errors import InvalidParameterError

ANSWER_KINDS: Final = ("attribute", "integer", "boolean")
MAX_COUNT: Final = 10
"""Scenes hold at most this many objects, which bounds gold counts."""


@final
class Answer(eqx.Module):  # type: ignore[misc]
    """A typed answer.

    Examples
    --------
    >>> from clevrshift.programs import Answer
    >>> Answer.from_value(True)
    Answer(kind='boolean', value=True)
    >>> Answer.from_value("Red") == Answer.from_value("red")
    False
    >>> Answer.from_value("Red").matches(Answer.from_value("red"))
    True

    """

    kind: str = eqx.field(static=True)
    value: str | int | bool = eqx.field(static=True)

    def __check_init__(self) -> None:
        match self.kind:
            case "boolean":
                ok = isinstance(self.value, bool)
            case "integer":
                ok = isinstance(self.value, int) and not isinstance(self.value, bool)
                ok = ok and self.value >= 0
            case "attribute":
                ok = isinstance(self.value, str)
            case _:
                msg = f"answer kind must be one of {ANSWER_KINDS}, got {self.kind!r}"
                raise InvalidParameterError(msg)
        if not ok:
            msg = f"{self.value!r} is not a valid {self.kind} answer"
            raise InvalidParameterError(msg)

    @classmethod
    def from_value(cls, value: Any, /) -> "Answer":
        """Infer the kind from the JSON type of ``value``."""
        if isinstance(value, bool):
            return cls("boolean", value)
        if isinstance(value, int):
            return cls("integer", value)
        if isinstance(value, str):
            return cls("attribute", value)
        msg = f"cannot interpret {value!r} as an answer"
        raise InvalidParameterError(msg)

    @classmethod
    def of_type(cls, value_type: ValueType, value: Any, /) -> "Answer":
        if value_type is ValueType.BOOLEAN:
            return cls("boolean", bool(value))
        if value_type is ValueType.INTEGER:
            return cls("integer", int(value))
        return cls("attribute", str(value))

    def matches(self, other: "Answer", /) -> bool:
        """Exact match, case-insensitive for attribute answers."""
        if self.kind != other.kind:
            return False
        if self.kind == "attribute":
            return str(self.value).casefold() == str(other.value).casefold()
        return self.value == other.value

    def to_json(self) -> str | int | bool:
        return self.value

    def __str__(self) -> str:
        if self.kind == "boolean":
            return "yes" if self.value else "no"
        return str(self.value)
