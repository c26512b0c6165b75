"""Operations and typechecked programs."""

__all__ = ["Operation", "Program", "typecheck"]

from collections.abc import Iterable, Sequence
from typing import Any, final

import equinox as eqx

from .signatures import ANSWER_TYPES, Signature, ValueType, resolve_signature
from clevrshift.errors import ProgramParseError, ProgramTypeError


def _ints(value: Iterable[int], /) -> tuple[int, ...]:
    return tuple(int(v) for v in value)


def _strs(value: Iterable[str], /) -> tuple[str, ...]:
    return tuple(str(v) for v in value)


@final
class Operation(eqx.Module):  # type: ignore[misc]
    """One step of a program.

    Examples
    --------
    >>> from clevrshift.programs import Operation
    >>> Operation("filter_shape", [0], ["bus"]).to_record()
    {'function': 'filter_shape', 'inputs': [0], 'value_inputs': ['bus']}

    """

    function: str
    inputs: tuple[int, ...] = eqx.field(default=(), converter=_ints)
    """Indices of earlier operations whose results this one consumes."""

    value_inputs: tuple[str, ...] = eqx.field(default=(), converter=_strs)
    """Literal arguments: attribute values, relation or part names."""

    @property
    def value(self) -> str | None:
        """The single literal, if any."""
        return self.value_inputs[0] if self.value_inputs else None

    def to_record(self) -> dict[str, Any]:
        return {
            "function": self.function,
            "inputs": list(self.inputs),
            "value_inputs": list(self.value_inputs),
        }


def typecheck(ops: Sequence[Operation], /) -> tuple[ValueType, ...]:
    """Check ``ops`` against the signature table and return each result type.

    Raises
    ------
    ProgramParseError
        On an unknown function, a bad input or literal arity, or a reference
        to a later operation.
    ProgramTypeError
        When an input has the wrong type, when some result is never consumed
        (more than one sink), or when the final result is not an answer.

    Examples
    --------
    >>> from clevrshift.programs import Operation, typecheck
    >>> typecheck([Operation("scene"), Operation("count", [0])])
    (<ValueType.OBJECT_SET: 'ObjectSet'>, <ValueType.INTEGER: 'integer'>)

    >>> typecheck([Operation("scene"), Operation("scene"), Operation("count", [0])])
    Traceback (most recent call last):
    ...
    clevrshift.errors.ProgramTypeError: operation 1: result is never used

    """
    if not ops:
        msg = "a program needs at least one operation"
        raise ProgramTypeError(None, msg)

    types: list[ValueType] = []
    used = [False] * len(ops)
    for i, op in enumerate(ops):
        for j in op.inputs:
            if not 0 <= j < i:
                msg = f"input {j} does not reference an earlier operation"
                raise ProgramParseError(i, msg)
            used[j] = True
        sig: Signature = resolve_signature(
            op.function, [types[j] for j in op.inputs], index=i
        )
        if len(op.value_inputs) != sig.n_literals:
            msg = f"{op.function} takes {sig.n_literals} value inputs, got {len(op.value_inputs)}"
            raise ProgramParseError(i, msg)
        types.append(sig.output)

    for i, u in enumerate(used[:-1]):
        if not u:
            msg = "result is never used"
            raise ProgramTypeError(i, msg)

    if types[-1] not in ANSWER_TYPES:
        msg = f"final result must be an attribute, integer or boolean, got {types[-1].value}"
        raise ProgramTypeError(len(ops) - 1, msg)
    return tuple(types)


@final
class Program(eqx.Module):  # type: ignore[misc]
    """A typechecked program: a DAG of operations with a single sink.

    Build programs with :meth:`Program.from_ops` (or
    :func:`~clevrshift.programs.parse_program`), which typechecks them.

    Examples
    --------
    >>> from clevrshift.programs import Operation, Program
    >>> prog = Program.from_ops([
    ...     Operation("scene"), Operation("filter_shape", [0], ["bus"]),
    ...     Operation("unique", [1]), Operation("query_color", [2])])
    >>> len(prog), prog.answer_type
    (4, <ValueType.COLOR: 'color'>)

    """

    ops: tuple[Operation, ...] = eqx.field(converter=tuple)
    types: tuple[ValueType, ...] = eqx.field(converter=tuple)
    """Result type of each operation."""

    def __check_init__(self) -> None:
        if len(self.ops) != len(self.types):
            msg = "every operation needs a result type"
            raise ProgramTypeError(None, msg)

    @classmethod
    def from_ops(cls, ops: Iterable[Operation], /) -> "Program":
        ops = tuple(ops)
        return cls(ops, typecheck(ops))

    def __len__(self) -> int:
        return len(self.ops)

    def __getitem__(self, index: int) -> Operation:
        return self.ops[index]

    @property
    def sink(self) -> int:
        return len(self.ops) - 1

    @property
    def answer_type(self) -> ValueType:
        return self.types[-1]

    def consumers(self) -> tuple[tuple[int, ...], ...]:
        """For each operation, the operations consuming its result."""
        out: list[list[int]] = [[] for _ in self.ops]
        for i, op in enumerate(self.ops):
            for j in op.inputs:
                out[j].append(i)
        return tuple(tuple(c) for c in out)

    def to_records(self) -> list[dict[str, Any]]:
        return [op.to_record() for op in self.ops]
