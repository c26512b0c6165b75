"""Question redundancy: audit, strip and saturate.

A filter or relate clause on the way to a ``unique`` is *redundant* when
deleting it leaves every ``unique`` a singleton with the same referent.
Deleting a filter rewires its consumers to its input; deleting a relate
clause replaces it (and the anchor phrase it hangs off) by a fresh
``scene``.
"""

__all__ = [
    "redundancy_audit",
    "strip_redundancy",
    "saturate_redundancy",
    "STRIP_PRIORITY",
]

import logging
from collections.abc import Hashable
from typing import Final

from .structure import ancestors, chain_into, filter_axis, is_anchor
from clevrshift.errors import ExecutionError
from clevrshift.execution import (
    ExecValue,
    ObjectValue,
    PartValue,
    execute_trace,
)
from clevrshift.programs import (
    IndexMap,
    Operation,
    Program,
    insert_operation,
    remove_operation,
    replace_operation,
    replace_with_scene,
)
from clevrshift.scenes import RELATIONS, Scene
from clevrshift.utils import RandomStream

logger = logging.getLogger(__name__)

STRIP_PRIORITY: Final = (
    "relate",
    "size",
    "material",
    "texture",
    "color",
    "category",
    "shape",
    "part_material",
    "part_color",
    "part_name",
)
"""Deletion order of :func:`strip_redundancy`."""

_OBJECT_ORDER: Final = ("size", "color", "material", "texture", "shape")
_PART_ORDER: Final = ("part_name", "part_color", "part_material")
_PART_FUNCTIONS: Final = {
    "part_name": "filter_part_name",
    "part_color": "filter_color",
    "part_material": "filter_material",
}


def _referent(value: ExecValue) -> Hashable:
    match value:
        case ObjectValue(id=i):
            return i
        case PartValue(owner=o, name=n):
            return (o, n)
    msg = f"{type(value).__name__} is not a referent"
    raise TypeError(msg)


def _uniques(program: Program) -> list[int]:
    return [i for i, op in enumerate(program.ops) if op.function == "unique"]


def _delete(program: Program, index: int) -> tuple[Program, IndexMap]:
    if program.ops[index].function == "relate":
        return replace_with_scene(program, index)
    return remove_operation(program, index)


def redundancy_audit(program: Program, scene: Scene, /) -> list[int]:
    """Return the positions of the redundant filters and relate clauses.

    Examples
    --------
    >>> from clevrshift.programs import Operation, Program
    >>> from clevrshift.questions import redundancy_audit
    >>> from clevrshift.scenes import ObjectInstance, Scene

    >>> def obj(i, shape, category, size, x):
    ...     return ObjectInstance(id=i, shape=shape, category=category, size=size,
    ...                           color="red", material="metal", position=(x, x),
    ...                           rotation=0.0, radius=1.0)
    >>> bus, sedan = ("school bus", "bus"), ("sedan", "car")
    >>> prog = Program.from_ops([
    ...     Operation("scene"), Operation("filter_size", [0], ["large"]),
    ...     Operation("filter_shape", [1], ["school bus"]), Operation("unique", [2]),
    ...     Operation("query_color", [3])])

    >>> scene = Scene.from_objects([obj(0, *bus, "large", 0.0), obj(1, *sedan, "large", 3.0)])
    >>> redundancy_audit(prog, scene)
    [1]
    >>> scene = Scene.from_objects([obj(0, *bus, "large", 0.0), obj(1, *bus, "small", 3.0),
    ...                             obj(2, *sedan, "large", 6.0)])
    >>> redundancy_audit(prog, scene)
    []

    """
    baseline = execute_trace(program, scene)
    uniques = _uniques(program)
    candidates = sorted(
        i
        for i in ancestors(program, uniques)
        if program.ops[i].function.startswith("filter_") or program.ops[i].function == "relate"
    )

    redundant: list[int] = []
    for c in candidates:
        edited, index_map = _delete(program, c)
        try:
            trace = execute_trace(edited, scene)
        except ExecutionError:
            continue
        if all(
            _referent(trace[index_map[u]]) == _referent(baseline[u])
            for u in uniques
            if u in index_map
        ):
            redundant.append(c)
    return redundant


def _strip_rank(program: Program, index: int) -> tuple[int, int]:
    if program.ops[index].function == "relate":
        return (0, index)
    return (STRIP_PRIORITY.index(filter_axis(program, index)), index)


def strip_redundancy(program: Program, scene: Scene, /) -> Program:
    """Delete redundant clauses until :func:`redundancy_audit` is empty.

    Relate clauses go first, then size, material, texture, color, category,
    shape, then part material, color and name; ties go to the earliest
    operation.
    """
    while redundant := redundancy_audit(program, scene):
        pick = min(redundant, key=lambda i: _strip_rank(program, i))
        logger.debug("stripping redundant %s at %d", program.ops[pick].function, pick)
        program, _ = _delete(program, pick)
    return program


# =============================================================================
# Saturation


def _object_wanted(scene: Scene, obj: int, present: set[str]) -> list[tuple[str, str]]:
    """Missing ``(function, value)`` filters of an object referent, in order."""
    o = scene.objects[obj]
    return [
        (f"filter_{axis}", value)
        for axis in _OBJECT_ORDER
        if axis not in present and (value := o.attribute(axis)) is not None
    ]


def _part_wanted(
    scene: Scene, owner: int, name: str, present: set[str]
) -> list[tuple[str, str]]:
    p = scene.objects[owner].part(name)
    return [
        (_PART_FUNCTIONS[axis], str(p.attribute(axis.removeprefix("part_"))))
        for axis in _PART_ORDER
        if axis not in present
    ]


def _saturate_attributes(program: Program, scene: Scene) -> Program:
    trace = execute_trace(program, scene)
    pending = [(u, trace[u]) for u in _uniques(program)]
    while pending:
        (u, value), *pending = pending
        chain = chain_into(program, u)
        present = {filter_axis(program, f) for f in chain.filters}
        match value:
            case ObjectValue(id=obj):
                wanted = _object_wanted(scene, obj, present)
                if "category" in present and any(fn == "filter_shape" for fn, _ in wanted):
                    # The shape filter takes the place of the category filter.
                    (cat,) = (f for f in chain.filters if filter_axis(program, f) == "category")
                    program, m = remove_operation(program, cat)
                    u, pending = m[u], [(m[i], v) for i, v in pending]
            case PartValue(owner=owner, name=name):
                wanted = _part_wanted(scene, owner, name, present)
            case _:
                continue

        for function, literal in wanted:
            program, m = insert_operation(program, u, function, [literal])
            u, pending = m[u], [(m[i], v) for i, v in pending]
    return program


def _identifying_phrase(scene: Scene, obj: int) -> list[Operation] | None:
    """``scene`` plus every attribute filter of ``obj``, if they single it out."""
    o = scene.objects[obj]
    ops = [Operation("scene")]
    matches = set(scene.ids)
    for axis in _OBJECT_ORDER:
        value = o.attribute(axis)
        if value is None:
            continue
        ops.append(Operation(f"filter_{axis}", [len(ops) - 1], [value]))
        matches &= {p.id for p in scene.objects if p.attribute(axis) == value}
    return ops if matches == {obj} else None


def _saturate_relations(program: Program, scene: Scene, rng: RandomStream) -> Program:
    trace = execute_trace(program, scene)
    pending = [(u, trace[u]) for u in _uniques(program)]
    while pending:
        (u, value), *pending = pending
        if not isinstance(value, ObjectValue):
            continue
        chain = chain_into(program, u)
        if (
            program.ops[chain.base].function != "scene"
            or len(program.consumers()[chain.base]) != 1
            or is_anchor(program, u)
        ):
            continue

        target = value.id
        for anchor in rng.shuffled(sorted(scene.ids - {target})):
            relations = [r for r in RELATIONS if target in scene.relate(anchor, r)]
            phrase = _identifying_phrase(scene, anchor)
            if not relations or phrase is None:
                continue
            n = len(phrase)
            replacement = [
                *phrase,
                Operation("unique", [n - 1]),
                Operation("relate", [n], [rng.choice(relations)]),
            ]
            program, m = replace_operation(program, chain.base, replacement)
            pending = [(m[i], v) for i, v in pending]
            break
        else:
            logger.debug("no anchor singles itself out for object %d", target)
    return program


def saturate_redundancy(program: Program, scene: Scene, rng: RandomStream, /) -> Program:
    """Describe every referent by all of its attributes and one relation.

    Each ``unique`` chain gains the missing size, color, material, texture
    (when the referent has one) and shape filters of its referent, or the
    name, color and material of a part referent, including any axis the
    question asks about. Then each object referent whose chain starts at
    ``scene`` (and which is not itself an anchor) gains a relate clause
    anchored at another object that its full attributes identify, when one
    exists.

    The executed answer is unchanged: only true facts about each referent
    are added.

    Examples
    --------
    >>> from clevrshift.programs import Operation, Program
    >>> from clevrshift.questions import saturate_redundancy
    >>> from clevrshift.scenes import ObjectInstance, Scene
    >>> from clevrshift.utils import RandomStream, derive_key

    >>> def obj(i, shape, category, color, x):
    ...     return ObjectInstance(id=i, shape=shape, category=category, size="large",
    ...                           color=color, material="metal", position=(x, x),
    ...                           rotation=0.0, radius=1.0)
    >>> scene = Scene.from_objects([obj(0, "school bus", "bus", "red", 0.0),
    ...                             obj(1, "sedan", "car", "cyan", 3.0)])
    >>> prog = Program.from_ops([
    ...     Operation("scene"), Operation("filter_category", [0], ["bus"]),
    ...     Operation("unique", [1]), Operation("query_color", [2])])
    >>> full = saturate_redundancy(prog, scene, RandomStream(derive_key(0)))
    >>> [op.function for op in full.ops]  # doctest: +NORMALIZE_WHITESPACE
    ['scene', 'filter_size', 'filter_color', 'filter_material', 'filter_shape',
     'unique', 'relate', 'filter_size', 'filter_color', 'filter_material',
     'filter_shape', 'unique', 'query_color']
    >>> full.ops[6].value in ("left", "behind")
    True

    """
    program = _saturate_attributes(program, scene)
    return _saturate_relations(program, scene, rng)
