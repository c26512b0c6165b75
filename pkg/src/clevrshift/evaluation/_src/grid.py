"""Accuracy grids and the Relative Degrade metric.

An accuracy grid holds :math:`A^i_j`, the accuracy of a model trained on
variant :math:`i` and tested on variant :math:`j`. The superscript (column)
is always the training variant and the subscript (row) the testing variant.

For the visual, redundancy and compositionality factors

.. math::

    RD = \\operatorname{avg}_{i \\neq j} \\frac{A^i_i - A^i_j}{A^i_i}

over the six ordered pairs of the three variants. For the concept
distribution factor

.. math::

    RD = \\frac{1}{3} \\sum_{k \\in \\{bal, slt, long\\}}
        \\frac{(A^k_{head} - A^k_{tail}) + (A^k_{long} - A^k_{oppo})}{2 A^k_k}

RD is a signed fraction. It is negative when out-of-domain accuracy is
higher than in-domain accuracy, and is never clamped.
"""

__all__ = ["FACTORS", "FACTOR_VARIANTS", "AccuracyGrid", "RdReport", "relative_degrade"]

from collections.abc import Mapping
from itertools import permutations
from types import MappingProxyType
from typing import Any, Final, final

import equinox as eqx
import jax.numpy as jnp
from jaxtyping import Array, Float

from clevrshift.errors import IncompleteGridError, InvalidParameterError

FACTORS: Final = ("visual", "redundancy", "distribution", "compositionality")

FACTOR_VARIANTS: Final = MappingProxyType(
    {
        "visual": (("easy", "mid", "hard"), ("easy", "mid", "hard")),
        "redundancy": (("rd-", "rd", "rd+"), ("rd-", "rd", "rd+")),
        "compositionality": (("co-0", "co-1", "co-2"), ("co-0", "co-1", "co-2")),
        "distribution": (
            ("bal", "slt", "long"),
            ("bal", "slt", "long", "head", "tail", "oppo"),
        ),
    }
)
"""Training (column) and testing (row) labels of each factor."""


def _cells(obj: Any) -> Float[Array, "r c"]:
    return jnp.asarray(obj, dtype=float)


@final
class AccuracyGrid(eqx.Module):  # type: ignore[misc]
    """Accuracies of one factor, rows = test variant, columns = train variant.

    Missing cells are NaN.

    Examples
    --------
    >>> from clevrshift.evaluation import AccuracyGrid
    >>> grid = AccuracyGrid.from_cells("visual", {("easy", "easy"): 0.9})
    >>> grid["easy", "easy"], grid.missing()[:2]
    (0.9, [('easy', 'mid'), ('easy', 'hard')])

    """

    factor: str = eqx.field(static=True)
    cells: Float[Array, "r c"] = eqx.field(converter=_cells)
    """``cells[row, col]`` is the accuracy on test row of a model trained on col."""

    def __check_init__(self) -> None:
        if self.factor not in FACTOR_VARIANTS:
            msg = f"factor must be one of {FACTORS}, got {self.factor!r}"
            raise InvalidParameterError(msg)
        shape = (len(self.test_variants), len(self.train_variants))
        if self.cells.shape != shape:
            msg = f"{self.factor} grid must have shape {shape}, got {self.cells.shape}"
            raise InvalidParameterError(msg)
        present = self.cells[~jnp.isnan(self.cells)]
        if bool(jnp.any((present < 0) | (present > 1))):
            msg = "accuracies must lie in [0, 1]"
            raise InvalidParameterError(msg)

    @property
    def train_variants(self) -> tuple[str, ...]:
        return FACTOR_VARIANTS[self.factor][0]

    @property
    def test_variants(self) -> tuple[str, ...]:
        return FACTOR_VARIANTS[self.factor][1]

    @classmethod
    def empty(cls, factor: str, /) -> "AccuracyGrid":
        if factor not in FACTOR_VARIANTS:
            msg = f"factor must be one of {FACTORS}, got {factor!r}"
            raise InvalidParameterError(msg)
        train, test = FACTOR_VARIANTS[factor]
        return cls(factor, jnp.full((len(test), len(train)), jnp.nan))

    @classmethod
    def from_cells(
        cls, factor: str, cells: Mapping[tuple[str, str], float], /
    ) -> "AccuracyGrid":
        """Build a grid from ``{(train, test): accuracy}``."""
        grid = cls.empty(factor)
        for (train, test), acc in cells.items():
            grid = grid.with_cell(train, test, acc)
        return grid

    def _position(self, train: str, test: str) -> tuple[int, int]:
        if train not in self.train_variants or test not in self.test_variants:
            msg = (
                f"({train!r}, {test!r}) is not a cell of the {self.factor} grid: "
                f"train in {self.train_variants}, test in {self.test_variants}"
            )
            raise InvalidParameterError(msg)
        return self.test_variants.index(test), self.train_variants.index(train)

    def with_cell(self, train: str, test: str, accuracy: float, /) -> "AccuracyGrid":
        row, col = self._position(train, test)
        return AccuracyGrid(self.factor, self.cells.at[row, col].set(accuracy))

    def __getitem__(self, key: tuple[str, str]) -> float:
        """``grid[train, test]``; NaN when the cell is missing."""
        return float(self.cells[self._position(*key)])

    def required(self) -> list[tuple[str, str]]:
        """The ``(train, test)`` cells the RD formula of this factor reads."""
        if self.factor == "distribution":
            return [
                (k, t)
                for k in self.train_variants
                for t in dict.fromkeys((k, "long", "head", "tail", "oppo"))
            ]
        return [(i, j) for i in self.train_variants for j in self.test_variants]

    def missing(self) -> list[tuple[str, str]]:
        return [c for c in self.required() if jnp.isnan(self.cells[self._position(*c)])]

    def scale(self, factor: float, /) -> "AccuracyGrid":
        return AccuracyGrid(self.factor, self.cells * factor)


# =============================================================================


@final
class RdReport(eqx.Module):  # type: ignore[misc]
    """Relative Degrade of one factor."""

    factor: str = eqx.field(static=True)
    rd: float = eqx.field(static=True)
    """Signed fraction, ``0.1`` means a 10% degrade."""
    terms: tuple[float, ...] = eqx.field(static=True, converter=tuple)
    """The averaged terms, in formula order."""

    @property
    def percent(self) -> float:
        return round(100 * self.rd, 3)

    def to_dict(self) -> dict[str, Any]:
        return {"factor": self.factor, "rd": self.rd, "rd_percent": self.percent}


def relative_degrade(grid: AccuracyGrid, /) -> RdReport:
    """Relative Degrade of a complete grid.

    Raises
    ------
    IncompleteGridError
        If a cell the formula reads is missing.
    InvalidParameterError
        If an in-domain accuracy is zero, which leaves RD undefined.

    Examples
    --------
    >>> from clevrshift.evaluation import AccuracyGrid, relative_degrade
    >>> v = ("easy", "mid", "hard")
    >>> grid = AccuracyGrid.from_cells(
    ...     "visual", {(i, j): 1.0 if i == j else 0.9 for i in v for j in v})
    >>> relative_degrade(grid).percent
    10.0

    """
    if missing := grid.missing():
        msg = f"{grid.factor} grid is missing cells (train, test): {missing}"
        raise IncompleteGridError(msg)
    train = grid.train_variants
    if any(grid[k, k] == 0 for k in train):
        msg = "in-domain accuracy of zero leaves relative degrade undefined"
        raise InvalidParameterError(msg)

    if grid.factor == "distribution":
        terms = [
            ((grid[k, "head"] - grid[k, "tail"]) + (grid[k, "long"] - grid[k, "oppo"]))
            / (2 * grid[k, k])
            for k in train
        ]
    else:
        terms = [(grid[i, i] - grid[i, j]) / grid[i, i] for i, j in permutations(train, 2)]
    return RdReport(grid.factor, sum(terms) / len(terms), terms)
