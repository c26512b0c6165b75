"""clevrshift: ground-truth scene graphs and their sampler.

Coordinates: ``+x`` is right and ``+y`` is front. Objects keep a footprint
margin instead of a rendered-pixel occlusion test.
"""

__all__ = [
    # Model
    "PartInstance",
    "ObjectInstance",
    "Provenance",
    "Scene",
    "OBJECT_AXES",
    "PART_AXES",
    "RELATIONS",
    "derive_relations",
    "validate_scene",
    # Sampler
    "GenConfig",
    "PlacementConfig",
    "sample_scene",
    "VISUAL_VARIANTS",
    # I/O
    "scene_to_json",
    "scene_from_json",
    "dump_scenes",
    "load_scenes",
]

from jaxtyping import install_import_hook

from clevrshift.setup_package import RUNTIME_TYPECHECKER

with install_import_hook("clevrshift.scenes", RUNTIME_TYPECHECKER):
    from ._src.core import (
        OBJECT_AXES,
        PART_AXES,
        ObjectInstance,
        PartInstance,
        Provenance,
        Scene,
    )
    from ._src.io import dump_scenes, load_scenes, scene_from_json, scene_to_json
    from ._src.relations import RELATIONS, derive_relations
    from ._src.sampler import GenConfig, PlacementConfig, VISUAL_VARIANTS, sample_scene
    from ._src.validate import validate_scene

# Cleanup
del install_import_hook, RUNTIME_TYPECHECKER
