"""clevrshift: domain-shift controlled scene-graph question answering."""

__all__ = [
    "__version__",
    "__version_tuple__",
    # Modules
    "concepts",
    "scenes",
    "programs",
    "questions",
    "execution",
    "perception",
    "evaluation",
    "cli",
    "errors",
    "utils",
    "typing",
]

from . import setup_package as setup_package

# isort: split
from . import (
    cli,
    concepts,
    errors,
    evaluation,
    execution,
    perception,
    programs,
    questions,
    scenes,
    typing,
    utils,
)
from ._version import version as __version__, version_tuple as __version_tuple__
