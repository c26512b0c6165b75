"""Spatial relations derived from positions."""

__all__ = ["RELATIONS", "derive_relations"]

from collections.abc import Sequence
from typing import Final

from xmmutablemap import ImmutableMap

from .core import ObjectInstance, Relationships
from clevrshift.errors import DegenerateLayoutError

RELATIONS: Final = ("left", "right", "front", "behind")


def derive_relations(objects: Sequence[ObjectInstance], /) -> Relationships:
    """Materialize the four relations from object positions.

    ``j in left[i]`` iff ``x_j < x_i`` and ``j in front[i]`` iff
    ``y_j > y_i``; ``right`` and ``behind`` are the complements.

    Raises
    ------
    DegenerateLayoutError
        If two objects share an ``x`` or a ``y`` coordinate.

    Examples
    --------
    >>> from clevrshift.scenes import ObjectInstance, derive_relations
    >>> objs = [
    ...     ObjectInstance(id=i, shape="jet", category="airplane", size="small",
    ...                    color="gray", material="metal", position=(x, -x),
    ...                    rotation=0.0, radius=0.6)
    ...     for i, x in enumerate([0.0, 1.0, 2.0])]
    >>> rel = derive_relations(objs)
    >>> sorted(rel["left"][2]), sorted(rel["front"][2])
    ([0, 1], [0, 1])

    """
    xs = [o.position[0] for o in objects]
    ys = [o.position[1] for o in objects]
    for axis, coords in (("x", xs), ("y", ys)):
        if len(set(coords)) != len(coords):
            msg = f"two objects share an {axis} coordinate"
            raise DegenerateLayoutError(msg)

    n = len(objects)
    others = [[j for j in range(n) if j != i] for i in range(n)]
    return ImmutableMap(
        {
            "left": tuple(frozenset(j for j in others[i] if xs[j] < xs[i]) for i in range(n)),
            "right": tuple(frozenset(j for j in others[i] if xs[j] > xs[i]) for i in range(n)),
            "front": tuple(frozenset(j for j in others[i] if ys[j] > ys[i]) for i in range(n)),
            "behind": tuple(frozenset(j for j in others[i] if ys[j] < ys[i]) for i in range(n)),
        }
    )
