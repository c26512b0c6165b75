"""Text and JSON renderings of evaluation results."""

__all__ = ["DISCREPANCY_NOTE", "format_grid", "grid_record", "score_record", "format_score"]

import math
from typing import Any, Final

from .grid import AccuracyGrid, RdReport
from .scoring import ScoreReport
from clevrshift.utils import info_block

DISCREPANCY_NOTE: Final = (
    "Note: RD follows the per-factor definition with superscript = training "
    "variant and subscript = testing variant. Relative degrades printed in the "
    "literature are not reproducible from the printed accuracy tables with this "
    "formula under either index convention; compare RD values computed here "
    "only with each other."
)


def _pct(value: float) -> str:
    return "-" if math.isnan(value) else f"{100 * value:.2f}"


def format_grid(grid: AccuracyGrid, rd: RdReport | None = None, /) -> str:
    """Render a grid as a table, training variants as columns.

    Examples
    --------
    >>> from clevrshift.evaluation import AccuracyGrid, format_grid
    >>> grid = AccuracyGrid.from_cells("redundancy", {("rd", "rd-"): 0.5})
    >>> print(format_grid(grid))
    factor: redundancy
    test/train      rd-       rd      rd+
    rd-               -    50.00        -
    rd                -        -        -
    rd+               -        -        -

    """
    lines = [
        f"factor: {grid.factor}",
        f"{'test/train':<12}" + "".join(f"{c:>9}" for c in grid.train_variants),
    ]
    for test in grid.test_variants:
        row = "".join(f"{_pct(grid[train, test]):>9}" for train in grid.train_variants)
        lines.append(f"{test:<12}{row}")
    if rd is not None:
        lines += ["", f"RD ({grid.factor}): {rd.percent:.3f}%", "", DISCREPANCY_NOTE]
    return "\n".join(lines)


def grid_record(grid: AccuracyGrid, rd: RdReport | None, /) -> dict[str, Any]:
    cells = [
        {"train": train, "test": test, "accuracy": grid[train, test]}
        for train in grid.train_variants
        for test in grid.test_variants
        if not math.isnan(grid[train, test])
    ]
    return {
        "info": info_block("report"),
        "factor": grid.factor,
        "train_variants": list(grid.train_variants),
        "test_variants": list(grid.test_variants),
        "cells": cells,
        "relative_degrade": None if rd is None else rd.to_dict(),
        "note": DISCREPANCY_NOTE,
    }


def format_score(report: ScoreReport, /) -> str:
    lines = [f"accuracy: {_pct(report.accuracy)}% ({report.correct}/{report.n})"]
    lines += [f"  {f:<20}{_pct(a):>8}%" for f, a in sorted(report.per_family.items())]
    return "\n".join(lines)


def score_record(report: ScoreReport, /) -> dict[str, Any]:
    return {"info": info_block("report"), **report.to_dict()}
