"""Grid manifests: which prediction file fills which grid cell.

::

    {"factor": "visual",
     "cells": [{"train": "easy", "test": "mid",
                "predictions": "preds/easy_mid.json",
                "gold": "data/mid/questions.json"}, ...]}

Relative paths are resolved against the manifest's directory.
"""

__all__ = ["GridCell", "GridManifest", "load_manifest", "evaluate_manifest", "score_files"]

import logging
from pathlib import Path
from typing import Any, final

import equinox as eqx

from .grid import AccuracyGrid, RdReport, relative_degrade
from .scoring import ScoreReport, score
from clevrshift.errors import DataError
from clevrshift.execution import load_predictions
from clevrshift.questions import load_questions
from clevrshift.utils import load_json

logger = logging.getLogger(__name__)


@final
class GridCell(eqx.Module):  # type: ignore[misc]
    train: str = eqx.field(static=True)
    test: str = eqx.field(static=True)
    predictions: Path = eqx.field(static=True, converter=Path)
    gold: Path = eqx.field(static=True, converter=Path)


@final
class GridManifest(eqx.Module):  # type: ignore[misc]
    factor: str = eqx.field(static=True)
    cells: tuple[GridCell, ...] = eqx.field(static=True, converter=tuple)


def load_manifest(path: str | Path, /) -> GridManifest:
    """Read a grid manifest, resolving cell paths against its directory."""
    path = Path(path)
    payload = load_json(path)
    root = path.parent
    try:
        cells = [
            GridCell(
                train=str(c["train"]),
                test=str(c["test"]),
                predictions=root / c["predictions"],
                gold=root / c["gold"],
            )
            for c in payload["cells"]
        ]
        return GridManifest(factor=str(payload["factor"]), cells=cells)
    except (KeyError, TypeError) as e:
        msg = f"malformed grid manifest {path}: {e!r}"
        raise DataError(msg) from e


def score_files(predictions: str | Path, gold: str | Path, /) -> ScoreReport:
    """Score a prediction file against a question file."""
    questions, _ = load_questions(gold)
    return score(load_predictions(predictions), questions)


def evaluate_manifest(
    manifest: GridManifest | str | Path, /
) -> tuple[AccuracyGrid, RdReport]:
    """Score every cell of a manifest and compute the factor's RD.

    Raises
    ------
    IncompleteGridError
        If the manifest leaves a cell the RD formula needs unfilled.

    """
    if not isinstance(manifest, GridManifest):
        manifest = load_manifest(manifest)

    grid = AccuracyGrid.empty(manifest.factor)
    gold_cache: dict[Path, list[Any]] = {}
    for cell in manifest.cells:
        if cell.gold not in gold_cache:
            gold_cache[cell.gold] = load_questions(cell.gold)[0]
        report = score(load_predictions(cell.predictions), gold_cache[cell.gold])
        logger.info(
            "%s: train %s, test %s -> %.4f",
            manifest.factor,
            cell.train,
            cell.test,
            report.accuracy,
        )
        grid = grid.with_cell(cell.train, cell.test, report.accuracy)
    return grid, relative_degrade(grid)
