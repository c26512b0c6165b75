"""Referent chains of a program.

A *chain* is a run of filters ``base -> filter -> ... -> head`` over an
object set (or part set) whose head feeds something other than a filter.
Chains are the noun phrases of a question. Object chains are numbered in
depth-first order from the sink, visiting inputs in order; a chain feeding
the ``unique`` anchor of a ``relate`` is not numbered but is rendered inside
the relate clause of the chain built on that ``relate``.
"""

__all__ = [
    "Chain",
    "chains",
    "chain_into",
    "referent_numbers",
    "anchor_chain",
    "is_anchor",
    "filter_axis",
    "ancestors",
]

from collections.abc import Iterable
from typing import NamedTuple

from clevrshift.programs import Program, ValueType

_SETS = (ValueType.OBJECT_SET, ValueType.PART_SET)


class Chain(NamedTuple):
    head: int
    base: int
    filters: tuple[int, ...]
    """Filter operations, from the base towards the head."""

    level: str
    """``object`` or ``part``."""


def filter_axis(program: Program, index: int, /) -> str:
    """Axis of a filter: ``size`` ... ``category`` or ``part_name`` / ``part_color`` ..."""
    axis = program.ops[index].function.removeprefix("filter_")
    if program.types[index] is ValueType.PART_SET and not axis.startswith("part_"):
        return f"part_{axis}"
    return axis


def _is_filter(program: Program, i: int) -> bool:
    return program.ops[i].function.startswith("filter_")


def chains(program: Program, /) -> dict[int, Chain]:
    """Every chain of ``program``, keyed by its head."""
    consumers = program.consumers()
    out: dict[int, Chain] = {}
    for h, t in enumerate(program.types):
        if t not in _SETS:
            continue
        if consumers[h] and all(_is_filter(program, c) for c in consumers[h]):
            continue
        filters: list[int] = []
        i = h
        while _is_filter(program, i):
            filters.append(i)
            i = program.ops[i].inputs[0]
        level = "part" if t is ValueType.PART_SET else "object"
        out[h] = Chain(h, i, tuple(reversed(filters)), level)
    return out


def chain_into(program: Program, index: int, /, slot: int = 0) -> Chain:
    """The chain feeding input ``slot`` of operation ``index``."""
    return chains(program)[program.ops[index].inputs[slot]]


def anchor_chain(program: Program, chain: Chain, /) -> Chain | None:
    """The chain of the anchor of a relate-based chain, if any."""
    base = program.ops[chain.base]
    if base.function != "relate":
        return None
    return chain_into(program, base.inputs[0])


def is_anchor(program: Program, unique: int, /) -> bool:
    """Whether a ``unique`` result is the anchor of a ``relate``."""
    return any(program.ops[c].function == "relate" for c in program.consumers()[unique])


def referent_numbers(program: Program, /) -> tuple[dict[int, int], int | None]:
    """Number the object chains; also return the head of the first part chain.

    Examples
    --------
    >>> from clevrshift.programs import Operation, Program
    >>> from clevrshift.questions._src.structure import referent_numbers
    >>> prog = Program.from_ops([
    ...     Operation("scene"), Operation("filter_shape", [0], ["bus"]),
    ...     Operation("count", [1]), Operation("scene"), Operation("count", [3]),
    ...     Operation("greater_than", [2, 4])])
    >>> referent_numbers(prog)
    ({1: 1, 3: 2}, None)

    """
    table = chains(program)
    numbers: dict[int, int] = {}
    part_head: int | None = None
    seen: set[int] = set()

    def visit(i: int) -> None:
        nonlocal part_head
        if i in seen:
            return
        seen.add(i)
        if i in table:
            c = table[i]
            if c.level == "object":
                numbers.setdefault(c.head, len(numbers) + 1)
            elif part_head is None:
                part_head = c.head
            base = program.ops[c.base]
            if base.function != "relate":
                for j in base.inputs:
                    visit(j)
            return
        for j in program.ops[i].inputs:
            visit(j)

    visit(program.sink)
    return numbers, part_head


def ancestors(program: Program, targets: Iterable[int], /) -> set[int]:
    """All operations that some of ``targets`` depend on (excluding them)."""
    out: set[int] = set()
    stack = [j for t in targets for j in program.ops[t].inputs]
    while stack:
        i = stack.pop()
        if i not in out:
            out.add(i)
            stack.extend(program.ops[i].inputs)
    return out
