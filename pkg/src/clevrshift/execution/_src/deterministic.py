"""Deterministic execution over a ground-truth scene graph."""

__all__ = [
    "ExecValue",
    "ObjectSetValue",
    "ObjectValue",
    "PartSetValue",
    "PartValue",
    "IntegerValue",
    "BooleanValue",
    "AttributeValue",
    "apply_operation",
    "execute_trace",
    "execute",
    "to_answer",
]

from collections.abc import Sequence
from dataclasses import dataclass
from typing import TypeAlias, final

from plum import dispatch
from zeroth import zeroth

from clevrshift.errors import MissingTextureError, NonUniqueError
from clevrshift.programs import Answer, Operation, Program
from clevrshift.scenes import Scene


@final
@dataclass(frozen=True, slots=True)
class ObjectSetValue:
    ids: frozenset[int]


@final
@dataclass(frozen=True, slots=True)
class ObjectValue:
    id: int


@final
@dataclass(frozen=True, slots=True)
class PartSetValue:
    parts: frozenset[tuple[int, str]]
    """``(object id, part name)`` pairs."""


@final
@dataclass(frozen=True, slots=True)
class PartValue:
    owner: int
    name: str


@final
@dataclass(frozen=True, slots=True)
class IntegerValue:
    value: int


@final
@dataclass(frozen=True, slots=True)
class BooleanValue:
    value: bool


@final
@dataclass(frozen=True, slots=True)
class AttributeValue:
    axis: str
    value: str


ExecValue: TypeAlias = (
    ObjectSetValue
    | ObjectValue
    | PartSetValue
    | PartValue
    | IntegerValue
    | BooleanValue
    | AttributeValue
)


# =============================================================================
# Overloaded operations


@dispatch
def _filter(scene: Scene, x: ObjectSetValue, axis: str, value: str, /) -> ObjectSetValue:
    return ObjectSetValue(x.ids & scene.having(axis, value))


@dispatch
def _filter(scene: Scene, x: PartSetValue, axis: str, value: str, /) -> PartSetValue:
    return PartSetValue(x.parts & scene.parts_having(axis, value))


@dispatch
def _unique(x: ObjectSetValue, index: int, /) -> ObjectValue:
    if len(x.ids) != 1:
        raise NonUniqueError(index, len(x.ids))
    return ObjectValue(zeroth(x.ids))


@dispatch
def _unique(x: PartSetValue, index: int, /) -> PartValue:
    if len(x.parts) != 1:
        raise NonUniqueError(index, len(x.parts))
    return PartValue(*zeroth(x.parts))


@dispatch
def _query(scene: Scene, x: ObjectValue, axis: str, index: int, /) -> AttributeValue:
    value = scene.objects[x.id].attribute(axis)
    if value is None:
        msg = f"operation {index}: object {x.id} has no {axis}"
        raise MissingTextureError(msg)
    return AttributeValue(axis, value)


@dispatch
def _query(scene: Scene, x: PartValue, axis: str, index: int, /) -> AttributeValue:
    value = scene.objects[x.owner].part(x.name).attribute(axis)
    if value is None:
        msg = f"operation {index}: part {x.name!r} of object {x.owner} has no {axis}"
        raise MissingTextureError(msg)
    return AttributeValue(axis, value)


@dispatch
def _object_to_part(scene: Scene, x: ObjectValue, /) -> PartSetValue:
    return PartSetValue(frozenset((x.id, p.name) for p in scene.objects[x.id].parts))


@dispatch
def _object_to_part(scene: Scene, x: ObjectSetValue, /) -> PartSetValue:
    return PartSetValue(frozenset((i, p.name) for i in x.ids for p in scene.objects[i].parts))


# =============================================================================


def apply_operation(
    scene: Scene, op: Operation, args: Sequence[ExecValue], /, *, index: int = 0
) -> ExecValue:
    """Apply one typechecked operation to already computed inputs.

    ``index`` is the position of ``op`` in its program; runtime errors
    report it.
    """
    fn = op.function
    head, _, axis = fn.partition("_")
    match head, args:
        case "scene", ():
            return ObjectSetValue(scene.ids)
        case "filter", (x,):
            return _filter(scene, x, "name" if axis == "part_name" else axis, op.value)
        case "unique", (x,):
            return _unique(x, index)
        case "relate", (ObjectValue(id=i),):
            return ObjectSetValue(scene.relate(i, op.value))
        case "same", (ObjectValue(id=i),):
            ref = scene.objects[i].attribute(axis)
            return ObjectSetValue(scene.having(axis, ref) - {i})
        case "intersect", (ObjectSetValue(ids=a), ObjectSetValue(ids=b)):
            return ObjectSetValue(a & b)
        case "union", (ObjectSetValue(ids=a), ObjectSetValue(ids=b)):
            return ObjectSetValue(a | b)
        case "count", (ObjectSetValue(ids=a),):
            return IntegerValue(len(a))
        case "exist", (ObjectSetValue(ids=a),):
            return BooleanValue(len(a) > 0)
        case "query", (x,):
            return _query(scene, x, axis, index)
        case "equal", (IntegerValue(value=a), IntegerValue(value=b)):
            return BooleanValue(a == b)
        case "equal", (AttributeValue(value=a), AttributeValue(value=b)):
            return BooleanValue(a == b)
        case "less", (IntegerValue(value=a), IntegerValue(value=b)):
            return BooleanValue(a < b)
        case "greater", (IntegerValue(value=a), IntegerValue(value=b)):
            return BooleanValue(a > b)
        case "object", (x,):
            return _object_to_part(scene, x)
        case "part", (PartSetValue(parts=ps),):
            return ObjectSetValue(frozenset(i for i, _ in ps))
    msg = f"cannot apply {fn} to {[type(a).__name__ for a in args]}"
    raise TypeError(msg)


def execute_trace(program: Program, scene: Scene, /) -> tuple[ExecValue, ...]:
    """Return the value of every operation of ``program`` on ``scene``."""
    values: list[ExecValue] = []
    for i, op in enumerate(program.ops):
        values.append(apply_operation(scene, op, [values[j] for j in op.inputs], index=i))
    return tuple(values)


def to_answer(value: ExecValue, /) -> Answer:
    match value:
        case IntegerValue(value=v):
            return Answer("integer", v)
        case BooleanValue(value=v):
            return Answer("boolean", v)
        case AttributeValue(value=v):
            return Answer("attribute", v)
    msg = f"{type(value).__name__} is not an answer"
    raise TypeError(msg)


def execute(program: Program, scene: Scene, /) -> Answer:
    """Execute ``program`` on ``scene``.

    Raises
    ------
    NonUniqueError
        ``unique`` received a set that is not a singleton.
    MissingTextureError
        ``query_texture`` reached an object or part without a texture.

    Examples
    --------
    >>> from clevrshift.execution import execute
    >>> from clevrshift.programs import parse_program
    >>> from clevrshift.scenes import ObjectInstance, Scene

    >>> def obj(i, shape, category, color, x):
    ...     return ObjectInstance(id=i, shape=shape, category=category, size="large",
    ...                           color=color, material="metal", position=(x, x),
    ...                           rotation=0.0, radius=1.0)
    >>> scene = Scene.from_objects([obj(0, "school bus", "bus", "red", 0.0),
    ...                             obj(1, "sedan", "car", "blue", 3.0),
    ...                             obj(2, "wagon", "car", "red", 6.0)])

    >>> def rec(fn, inputs=(), values=()):
    ...     return {"function": fn, "inputs": list(inputs), "value_inputs": list(values)}
    >>> execute(parse_program([rec("scene"), rec("filter_shape", [0], ["school bus"]),
    ...                        rec("unique", [1]), rec("query_color", [2])]), scene)
    Answer(kind='attribute', value='red')
    >>> execute(parse_program([rec("scene"), rec("filter_category", [0], ["car"]),
    ...                        rec("count", [1])]), scene)
    Answer(kind='integer', value=2)

    """
    return to_answer(execute_trace(program, scene)[-1])
