"""Scene invariant checks."""

__all__ = ["validate_scene", "DEFAULT_MARGIN", "N_OBJECTS_RANGE"]

import itertools
import math
from typing import Final

from .core import ObjectInstance, Scene
from .relations import RELATIONS, derive_relations
from clevrshift.concepts import ConceptVocabulary, default_vocabulary
from clevrshift.errors import DegenerateLayoutError

DEFAULT_MARGIN: Final = 0.4
N_OBJECTS_RANGE: Final = (3, 10)


def validate_scene(
    scene: Scene,
    vocab: ConceptVocabulary | None = None,
    /,
    *,
    margin: float = DEFAULT_MARGIN,
    n_objects_range: tuple[int, int] = N_OBJECTS_RANGE,
) -> list[str]:
    """Return every scene invariant that ``scene`` violates.

    An empty list means the scene is valid. Violations are data, never
    exceptions.

    Examples
    --------
    >>> from clevrshift.scenes import ObjectInstance, Scene, validate_scene
    >>> objs = [
    ...     ObjectInstance(id=i, shape="sedan", category="car", size="small",
    ...                    color="red", material="metal", position=(x, x),
    ...                    rotation=0.0, radius=0.6)
    ...     for i, x in enumerate([0.0, 1.0])]
    >>> validate_scene(Scene.from_objects(objs))
    ['object count below 3', 'overlap between objects 0 and 1']

    """
    vocab = default_vocabulary() if vocab is None else vocab
    out: list[str] = []

    lo, hi = n_objects_range
    if len(scene.objects) < lo:
        out.append(f"object count below {lo}")
    if len(scene.objects) > hi:
        out.append(f"object count above {hi}")

    for o in scene.objects:
        out.extend(_object_violations(o, vocab))

    for a, b in itertools.combinations(scene.objects, 2):
        if math.dist(a.position, b.position) < a.radius + b.radius + margin:
            out.append(f"overlap between objects {a.id} and {b.id}")

    try:
        expected = derive_relations(scene.objects)
    except DegenerateLayoutError as e:
        out.append(f"degenerate layout: {e}")
    else:
        for r in RELATIONS:
            actual = scene.relationships.get(r)
            if actual is None or tuple(actual) != tuple(expected[r]):
                out.append(f"relationships inconsistent with positions ({r})")

    return out


def _object_violations(o: ObjectInstance, vocab: ConceptVocabulary) -> list[str]:
    out: list[str] = []
    checks = (
        ("shape", o.shape, vocab.shapes),
        ("color", o.color, vocab.colors),
        ("material", o.material, vocab.materials),
        ("size", o.size, vocab.sizes),
    )
    for axis, value, allowed in checks:
        if value not in allowed:
            out.append(f"object {o.id}: unknown {axis} {value!r}")
    if o.texture is not None and o.texture not in vocab.textures:
        out.append(f"object {o.id}: unknown texture {o.texture!r}")
    if o.shape in vocab.shape_to_category and vocab.shape_to_category[o.shape] != o.category:
        out.append(f"object {o.id}: category {o.category!r} does not match shape")
    if o.radius <= 0:
        out.append(f"object {o.id}: radius must be positive")

    valid_parts = vocab.parts.get(o.shape, ())
    names = [p.name for p in o.parts]
    if len(set(names)) != len(names):
        out.append(f"object {o.id}: duplicate parts")
    for p in o.parts:
        if p.name not in valid_parts:
            out.append(f"object {o.id}: part {p.name!r} is not valid for {o.shape!r}")
        if p.color not in vocab.colors or p.material not in vocab.materials:
            out.append(f"object {o.id}: part {p.name!r} has unknown attributes")
        if p.texture is not None and p.texture not in vocab.textures:
            out.append(f"object {o.id}: part {p.name!r} has unknown texture")
    return out
