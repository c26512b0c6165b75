"""Collapse a perceived scene to a crisp scene graph."""

__all__ = ["harden"]

import numpy as np

from .core import PerceivedScene
from clevrshift.concepts import ConceptVocabulary, default_vocabulary
from clevrshift.scenes import ObjectInstance, PartInstance, Scene


def _argmax(table: object, values: tuple[str, ...]) -> list[str]:
    # np.argmax returns the first maximum, i.e. the lowest canonical index.
    return [values[i] for i in np.asarray(table).argmax(axis=1).tolist()]


def harden(pscene: PerceivedScene, /, *, vocab: ConceptVocabulary | None = None) -> Scene:
    """Take the argmax of every table and re-derive relationships.

    Detections become objects in detection order; positions are converted
    back to scene units and rotations are zero.

    Examples
    --------
    >>> from clevrshift.perception import harden, one_hot
    >>> from clevrshift.scenes import GenConfig, sample_scene
    >>> scene = sample_scene(GenConfig.from_variants("hard"), 2)
    >>> hard = harden(one_hot(scene))
    >>> [o.attribute("texture") for o in hard.objects] == [o.texture for o in scene.objects]
    True
    >>> hard.relationships == scene.relationships
    True

    """
    vocab = default_vocabulary() if vocab is None else vocab
    shapes = _argmax(pscene.shape, vocab.shapes)
    colors = _argmax(pscene.color, vocab.colors)
    materials = _argmax(pscene.material, vocab.materials)
    sizes = _argmax(pscene.size, vocab.sizes)
    textures = (
        [None] * pscene.n if pscene.texture is None else _argmax(pscene.texture, vocab.textures)
    )

    part_colors = _argmax(pscene.part_color, vocab.colors)
    part_materials = _argmax(pscene.part_material, vocab.materials)
    part_textures = (
        [None] * pscene.m
        if pscene.part_texture is None
        else _argmax(pscene.part_texture, vocab.textures)
    )
    parts: list[list[PartInstance]] = [[] for _ in range(pscene.n)]
    for j, owner in enumerate(np.asarray(pscene.part_owner).tolist()):
        parts[owner].append(
            PartInstance(pscene.part_names[j], part_colors[j], part_materials[j], part_textures[j])
        )

    positions = np.asarray(pscene.centers) / pscene.pixels_per_unit
    objects = [
        ObjectInstance(
            id=i,
            shape=shapes[i],
            category=vocab.shape_to_category[shapes[i]],
            size=sizes[i],
            color=colors[i],
            material=materials[i],
            position=positions[i].tolist(),
            rotation=0.0,
            radius=vocab.radius(sizes[i]),
            parts=tuple(parts[i]),
            texture=textures[i],
        )
        for i in range(pscene.n)
    ]
    return Scene.from_objects(objects, scene_id=pscene.scene_id)
