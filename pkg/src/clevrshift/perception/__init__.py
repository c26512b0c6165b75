"""clevrshift: simulated scene parsing.

Stands in for a trained detector: ground-truth scenes become per-detection
likelihood tables under a seeded noise model, and can be collapsed back to
crisp scenes for the deterministic baseline.
"""

__all__ = [
    "PerceivedScene",
    "OBJECT_AXES",
    "PART_AXES",
    "DEFAULT_PIXELS_PER_UNIT",
    "NoiseConfig",
    "perceive",
    "one_hot",
    "harden",
    "perceived_to_json",
    "perceived_from_json",
    "dump_perceived",
    "load_perceived",
]

from jaxtyping import install_import_hook

from clevrshift.setup_package import RUNTIME_TYPECHECKER

with install_import_hook("clevrshift.perception", RUNTIME_TYPECHECKER):
    from ._src.core import DEFAULT_PIXELS_PER_UNIT, OBJECT_AXES, PART_AXES, PerceivedScene
    from ._src.harden import harden
    from ._src.io import dump_perceived, load_perceived, perceived_from_json, perceived_to_json
    from ._src.noise import NoiseConfig, one_hot, perceive

# Cleanup
del install_import_hook, RUNTIME_TYPECHECKER
