"""Ground-truth scene graphs."""

__all__ = [
    "PartInstance",
    "ObjectInstance",
    "Provenance",
    "Scene",
    "Relationships",
    "OBJECT_AXES",
    "PART_AXES",
]

from collections import defaultdict
from collections.abc import Hashable, Iterable, Mapping
from typing import Final, TypeAlias, final

import equinox as eqx

from xmmutablemap import ImmutableMap

from clevrshift.errors import InvalidLiteralError, InvalidParameterError

Relationships: TypeAlias = ImmutableMap[str, tuple[frozenset[int], ...]]
"""Relation name -> per-object set of ids bearing that relation to it."""

OBJECT_AXES: Final = ("shape", "category", "size", "color", "material", "texture")
PART_AXES: Final = ("name", "color", "material", "texture")


def _position(value: Iterable[float], /) -> tuple[float, float]:
    x, y = (float(v) for v in value)
    return (x, y)


def _relationships(
    value: Mapping[str, Iterable[Iterable[int]]], /
) -> Relationships:
    return ImmutableMap(
        {str(r): tuple(frozenset(int(j) for j in js) for js in rows) for r, rows in value.items()}
    )


def _frozen_index(
    index: Mapping[tuple[str, str], set[Hashable]], /
) -> ImmutableMap[tuple[str, str], frozenset[Hashable]]:
    return ImmutableMap({k: frozenset(v) for k, v in index.items()})


@final
class PartInstance(eqx.Module):  # type: ignore[misc]
    """One part of an object."""

    name: str
    color: str
    material: str
    texture: str | None = None

    def attribute(self, axis: str, /) -> str | None:
        """Return the value of ``axis`` (``name``, ``color``, ...)."""
        match axis:
            case "name" | "part":
                return self.name
            case "color":
                return self.color
            case "material":
                return self.material
            case "texture":
                return self.texture
            case _:
                msg = f"parts have no {axis!r} attribute"
                raise InvalidLiteralError(msg)


@final
class ObjectInstance(eqx.Module):  # type: ignore[misc]
    """One object of a scene.

    The whole-object attributes are those of its main body, parts may differ.

    Examples
    --------
    >>> from clevrshift.scenes import ObjectInstance, PartInstance
    >>> obj = ObjectInstance(
    ...     id=0, shape="school bus", category="bus", size="large", color="red",
    ...     material="metal", position=(1, -2), rotation=30.0, radius=1.0,
    ...     parts=(PartInstance("door", "blue", "rubber"),))
    >>> obj.position, obj.attribute("category"), obj.part("door").color
    ((1.0, -2.0), 'bus', 'blue')

    """

    id: int
    """Index of the object within its scene."""

    shape: str
    category: str
    size: str
    color: str
    material: str

    position: tuple[float, float] = eqx.field(converter=_position)
    """Planar coordinates; ``+x`` is right, ``+y`` is front."""

    rotation: float = eqx.field(converter=float)
    """Yaw angle in degrees."""

    radius: float = eqx.field(converter=float)
    """Footprint radius in scene units."""

    parts: tuple[PartInstance, ...] = eqx.field(default=(), converter=tuple)
    texture: str | None = None

    def __check_init__(self) -> None:
        if self.radius <= 0:
            msg = f"object {self.id} must have a positive radius"
            raise InvalidParameterError(msg)

    @property
    def x(self) -> float:
        return self.position[0]

    @property
    def y(self) -> float:
        return self.position[1]

    def attribute(self, axis: str, /) -> str | None:
        """Return the body value of ``axis``."""
        match axis:
            case "shape":
                return self.shape
            case "category":
                return self.category
            case "size":
                return self.size
            case "color":
                return self.color
            case "material":
                return self.material
            case "texture":
                return self.texture
            case _:
                msg = f"objects have no {axis!r} attribute"
                raise InvalidLiteralError(msg)

    def part(self, name: str, /) -> PartInstance:
        """Return the part called ``name``."""
        for p in self.parts:
            if p.name == name:
                return p
        msg = f"object {self.id} ({self.shape}) has no part {name!r}"
        raise InvalidLiteralError(msg)


@final
class Provenance(eqx.Module):  # type: ignore[misc]
    """Where a scene came from."""

    config_digest: str
    """Digest of the generating configuration."""

    seed: int
    split: int = 0
    visual: str = ""


@final
class Scene(eqx.Module):  # type: ignore[misc]
    """A ground-truth scene graph.

    Use :meth:`Scene.from_objects` to derive the relationships from the
    object positions.

    Examples
    --------
    >>> from clevrshift.scenes import ObjectInstance, Scene
    >>> objs = [
    ...     ObjectInstance(id=i, shape="sedan", category="car", size="small",
    ...                    color="red", material="metal", position=(x, y),
    ...                    rotation=0.0, radius=0.6)
    ...     for i, (x, y) in enumerate([(0, 0), (5, 1)])]
    >>> scene = Scene.from_objects(objs, scene_id=7)
    >>> sorted(scene.relate(1, "left")), sorted(scene.relate(0, "right"))
    ([0], [1])

    """

    scene_id: int
    objects: tuple[ObjectInstance, ...] = eqx.field(converter=tuple)
    relationships: Relationships = eqx.field(converter=_relationships)
    provenance: Provenance | None = None

    _objects_by: ImmutableMap[tuple[str, str], frozenset[int]] = eqx.field(
        init=False, repr=False
    )
    _parts_by: ImmutableMap[tuple[str, str], frozenset[tuple[int, str]]] = eqx.field(
        init=False, repr=False
    )

    def __post_init__(self) -> None:
        objects: defaultdict[tuple[str, str], set[int]] = defaultdict(set)
        parts: defaultdict[tuple[str, str], set[tuple[int, str]]] = defaultdict(set)
        for o in self.objects:
            for axis in OBJECT_AXES:
                if (value := o.attribute(axis)) is not None:
                    objects[axis, value].add(o.id)
            for p in o.parts:
                for axis in PART_AXES:
                    if (value := p.attribute(axis)) is not None:
                        parts[axis, value].add((o.id, p.name))
        object.__setattr__(self, "_objects_by", _frozen_index(objects))
        object.__setattr__(self, "_parts_by", _frozen_index(parts))

    def __check_init__(self) -> None:
        if any(o.id != i for i, o in enumerate(self.objects)):
            msg = "object ids must equal their position in the scene"
            raise InvalidParameterError(msg)

    @classmethod
    def from_objects(
        cls,
        objects: Iterable[ObjectInstance],
        /,
        *,
        scene_id: int = 0,
        provenance: Provenance | None = None,
    ) -> "Scene":
        """Build a scene, deriving relationships from positions."""
        from .relations import derive_relations

        objects = tuple(objects)
        return cls(
            scene_id=scene_id,
            objects=objects,
            relationships=derive_relations(objects),
            provenance=provenance,
        )

    def __len__(self) -> int:
        return len(self.objects)

    @property
    def ids(self) -> frozenset[int]:
        """All object ids."""
        return frozenset(range(len(self.objects)))

    def relate(self, obj: int, relation: str, /) -> frozenset[int]:
        """Return the ids bearing ``relation`` to object ``obj``."""
        try:
            rows = self.relationships[relation]
        except KeyError:
            msg = f"unknown relation {relation!r}"
            raise InvalidLiteralError(msg) from None
        return rows[obj]

    def having(self, axis: str, value: str, /) -> frozenset[int]:
        """Return the ids of the objects whose ``axis`` is ``value``.

        Examples
        --------
        >>> from clevrshift.scenes import ObjectInstance, Scene
        >>> objs = [
        ...     ObjectInstance(id=i, shape=s, category=c, size="small", color="red",
        ...                    material="metal", position=(3 * i, i), rotation=0.0,
        ...                    radius=0.6)
        ...     for i, (s, c) in enumerate([("sedan", "car"), ("wagon", "car")])]
        >>> scene = Scene.from_objects(objs)
        >>> sorted(scene.having("category", "car")), sorted(scene.having("shape", "bus"))
        ([0, 1], [])

        """
        if axis not in OBJECT_AXES:
            msg = f"objects have no {axis!r} attribute"
            raise InvalidLiteralError(msg)
        return self._objects_by.get((axis, value), frozenset())

    def parts_having(self, axis: str, value: str, /) -> frozenset[tuple[int, str]]:
        """Return the ``(owner, part name)`` pairs whose ``axis`` is ``value``."""
        if axis not in PART_AXES:
            msg = f"parts have no {axis!r} attribute"
            raise InvalidLiteralError(msg)
        return self._parts_by.get((axis, value), frozenset())

    @property
    def textured(self) -> bool:
        """Whether any object carries a texture."""
        return any(o.texture is not None for o in self.objects)
