"""clevrshift: accuracy and Relative Degrade.

Grids index accuracies by ``(train, test)`` variant. Columns are training
variants and rows testing variants.
"""

__all__ = [
    # Scoring
    "ScoreReport",
    "score",
    # Grids
    "FACTORS",
    "FACTOR_VARIANTS",
    "AccuracyGrid",
    "RdReport",
    "relative_degrade",
    # Manifests
    "GridCell",
    "GridManifest",
    "load_manifest",
    "evaluate_manifest",
    "score_files",
    # Reports
    "DISCREPANCY_NOTE",
    "format_grid",
    "format_score",
    "grid_record",
    "score_record",
]

from jaxtyping import install_import_hook

from clevrshift.setup_package import RUNTIME_TYPECHECKER

with install_import_hook("clevrshift.evaluation", RUNTIME_TYPECHECKER):
    from ._src.grid import FACTOR_VARIANTS, FACTORS, AccuracyGrid, RdReport, relative_degrade
    from ._src.manifest import (
        GridCell,
        GridManifest,
        evaluate_manifest,
        load_manifest,
        score_files,
    )
    from ._src.report import DISCREPANCY_NOTE, format_grid, format_score, grid_record, score_record
    from ._src.scoring import ScoreReport, score

# Cleanup
del install_import_hook, RUNTIME_TYPECHECKER
