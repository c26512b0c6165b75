"""Operation-level program edits.

Every edit returns the re-typechecked program together with a map from the
indices of surviving original operations to their new indices. Operations no
longer reachable from the sink are pruned.
"""

__all__ = [
    "IndexMap",
    "remove_operation",
    "insert_operation",
    "replace_operation",
    "replace_with_scene",
    "prune",
]

from collections.abc import Hashable, Sequence
from typing import NamedTuple, TypeAlias

from .core import Operation, Program
from clevrshift.errors import ProgramParseError

IndexMap: TypeAlias = dict[int, int]


class _Node(NamedTuple):
    key: Hashable
    function: str
    inputs: tuple[Hashable, ...]
    value_inputs: tuple[str, ...]


def _nodes(program: Program) -> list[_Node]:
    return [_Node(i, op.function, op.inputs, op.value_inputs) for i, op in enumerate(program.ops)]


def _rebuild(nodes: Sequence[_Node]) -> tuple[Program, IndexMap]:
    """Keep the nodes reachable from the last one, in list order."""
    by_key = {n.key: n for n in nodes}
    live: set[Hashable] = set()
    stack = [nodes[-1].key]
    while stack:
        k = stack.pop()
        if k in live:
            continue
        live.add(k)
        stack.extend(by_key[k].inputs)

    kept = [n for n in nodes if n.key in live]
    position = {n.key: i for i, n in enumerate(kept)}
    ops = [
        Operation(n.function, [position[k] for k in n.inputs], n.value_inputs) for n in kept
    ]
    index_map = {n.key: position[n.key] for n in kept if isinstance(n.key, int)}
    return Program.from_ops(ops), index_map


def _check_index(program: Program, index: int) -> None:
    if not 0 <= index < len(program):
        msg = f"no operation {index} in a program of length {len(program)}"
        raise ProgramParseError(index, msg)


def prune(program: Program, /) -> tuple[Program, IndexMap]:
    """Drop operations that the sink does not depend on."""
    return _rebuild(_nodes(program))


def remove_operation(program: Program, index: int, /) -> tuple[Program, IndexMap]:
    """Remove a single-input operation, rewiring its consumers to its input.

    Examples
    --------
    >>> from clevrshift.programs import Operation, Program, remove_operation
    >>> prog = Program.from_ops([
    ...     Operation("scene"), Operation("filter_size", [0], ["large"]),
    ...     Operation("filter_shape", [1], ["bus"]), Operation("count", [2])])
    >>> new, index_map = remove_operation(prog, 1)
    >>> [op.function for op in new.ops], index_map
    (['scene', 'filter_shape', 'count'], {0: 0, 2: 1, 3: 2})

    """
    _check_index(program, index)
    op = program.ops[index]
    if len(op.inputs) != 1:
        msg = f"only single-input operations can be removed, {op.function} has {len(op.inputs)}"
        raise ProgramParseError(index, msg)
    (source,) = op.inputs
    nodes = [
        n._replace(inputs=tuple(source if k == index else k for k in n.inputs))
        for n in _nodes(program)
        if n.key != index
    ]
    return _rebuild(nodes)


def insert_operation(
    program: Program,
    consumer: int,
    function: str,
    value_inputs: Sequence[str] = (),
    /,
    *,
    slot: int = 0,
) -> tuple[Program, IndexMap]:
    """Insert a single-input operation in front of input ``slot`` of ``consumer``.

    Examples
    --------
    >>> from clevrshift.programs import Operation, Program, insert_operation
    >>> prog = Program.from_ops([Operation("scene"), Operation("count", [0])])
    >>> new, _ = insert_operation(prog, 1, "filter_color", ["red"])
    >>> [(op.function, op.inputs) for op in new.ops]
    [('scene', ()), ('filter_color', (0,)), ('count', (1,))]

    """
    _check_index(program, consumer)
    inputs = program.ops[consumer].inputs
    if not 0 <= slot < len(inputs):
        msg = f"{program.ops[consumer].function} has no input slot {slot}"
        raise ProgramParseError(consumer, msg)

    new_key = ("new", 0)
    nodes: list[_Node] = []
    for n in _nodes(program):
        if n.key == consumer:
            nodes.append(_Node(new_key, function, (inputs[slot],), tuple(value_inputs)))
            rewired = list(n.inputs)
            rewired[slot] = new_key
            n = n._replace(inputs=tuple(rewired))  # noqa: PLW2901
        nodes.append(n)
    return _rebuild(nodes)


def replace_operation(
    program: Program, index: int, replacement: Sequence[Operation], /
) -> tuple[Program, IndexMap]:
    """Replace operation ``index`` by a sub-program.

    ``replacement`` holds operations whose inputs index into ``replacement``
    itself. Its last operation takes over the consumers of ``index``, and the
    inputs of the replaced operation are dropped (and pruned if unused).
    """
    _check_index(program, index)
    if not replacement:
        msg = "replacement must contain at least one operation"
        raise ProgramParseError(index, msg)

    local = [("new", k) for k in range(len(replacement))]
    nodes: list[_Node] = []
    for n in _nodes(program):
        if n.key == index:
            nodes.extend(
                _Node(local[k], op.function, tuple(local[j] for j in op.inputs), op.value_inputs)
                for k, op in enumerate(replacement)
            )
            continue
        nodes.append(n._replace(inputs=tuple(local[-1] if k == index else k for k in n.inputs)))
    return _rebuild(nodes)


def replace_with_scene(program: Program, index: int, /) -> tuple[Program, IndexMap]:
    """Replace operation ``index`` (typically a ``relate``) by a fresh ``scene``.

    The chain that fed it becomes unreachable and is pruned.
    """
    return replace_operation(program, index, [Operation("scene")])
