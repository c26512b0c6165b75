"""clevrshift: command line.

``clevrshift generate | perturb | execute | evaluate``. Options resolve as
flags > ``--config`` file > defaults; each run records the resolved
configuration in ``<command>.provenance.json`` beside its outputs.
"""

__all__ = [
    "main",
    "build_parser",
    "EXIT_OK",
    "EXIT_CONFIG",
    "EXIT_DATA",
    # Configuration
    "COMMANDS",
    "DEFAULTS",
    "SPLITS",
    "load_config_file",
    "resolve",
    "parse_questions_per_scene",
    "vocabulary_from",
    "write_provenance",
    # Commands
    "EXECUTE_MODES",
    "run_generate",
    "run_perturb",
    "run_execute",
    "run_evaluate",
]

from jaxtyping import install_import_hook

from clevrshift.setup_package import RUNTIME_TYPECHECKER

with install_import_hook("clevrshift.cli", RUNTIME_TYPECHECKER):
    from ._src.commands import EXECUTE_MODES, run_evaluate, run_execute, run_generate, run_perturb
    from ._src.config import (
        COMMANDS,
        DEFAULTS,
        SPLITS,
        load_config_file,
        parse_questions_per_scene,
        resolve,
        vocabulary_from,
        write_provenance,
    )
    from ._src.main import EXIT_CONFIG, EXIT_DATA, EXIT_OK, build_parser, main

# Cleanup
del install_import_hook, RUNTIME_TYPECHECKER
