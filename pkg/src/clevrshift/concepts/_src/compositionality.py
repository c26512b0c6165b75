"""Color-given-shape co-distribution matrices."""

__all__ = ["CoDistributionMatrix", "co_matrix", "CO_MODES"]

from typing import Final, final

import equinox as eqx
import jax.numpy as jnp
import numpy as np
from jaxtyping import Array

from .vocabulary import ConceptVocabulary, default_vocabulary
from clevrshift.errors import InvalidParameterError
from clevrshift.typing import RowMatrix, Weights

CO_MODES: Final = ("co-0", "co-1", "co-2")
DEFAULT_PEAK: Final = 0.8

_TOL: Final = 1e-9


def _as_rows(value: Array | list[list[float]], /) -> RowMatrix:
    return jnp.asarray(value, dtype=float)


@final
class CoDistributionMatrix(eqx.Module):  # type: ignore[misc]
    """Conditional color distribution of every shape.

    Entry ``(i, j)`` is the probability that shape ``i`` takes color ``j``.
    """

    rows: RowMatrix = eqx.field(converter=_as_rows)
    """Row-stochastic ``shapes × colors`` matrix."""

    mode: str = eqx.field(default="custom", static=True)
    """Construction mode, for provenance only."""

    def __check_init__(self) -> None:
        rows = np.asarray(self.rows)
        if rows.ndim != 2:  # noqa: PLR2004
            msg = f"co-distribution matrix must be 2-d, got shape {rows.shape}"
            raise InvalidParameterError(msg)
        if (rows < 0).any() or (rows > 1).any():
            msg = "co-distribution entries must lie in [0, 1]"
            raise InvalidParameterError(msg)
        if (np.abs(rows.sum(axis=1) - 1.0) > _TOL).any():
            msg = "every co-distribution row must sum to 1"
            raise InvalidParameterError(msg)

    def row(self, shape_index: int, /) -> Weights:
        """Return the color distribution of one shape."""
        return self.rows[shape_index]

    def assigned_colors(self) -> tuple[int, ...]:
        """Return the argmax color index of every row."""
        return tuple(np.argmax(np.asarray(self.rows), axis=1).tolist())


def _peaked_row(assigned: int, K: int, peak: float) -> np.ndarray:
    row = np.full(K, (1.0 - peak) / (K - 1))
    row[assigned] = peak
    return row


def co_matrix(
    mode: str,
    vocab: ConceptVocabulary | None = None,
    /,
    *,
    peak: float = DEFAULT_PEAK,
) -> CoDistributionMatrix:
    """Build the co-distribution matrix of a compositionality variant.

    - ``co-0``: every entry is ``1 / K``.
    - ``co-1``: the shape at within-category position ``j`` is peaked on
      color ``j``, so shapes of one category differ while shapes at the same
      position of different categories agree.
    - ``co-2``: every shape of category ``c`` is peaked on color ``c``.

    A peaked row puts ``peak`` on its assigned color and spreads the rest
    uniformly over the other colors.

    Examples
    --------
    >>> from clevrshift.concepts import co_matrix, default_vocabulary
    >>> vocab = default_vocabulary()

    >>> m = co_matrix("co-0", vocab)
    >>> m.rows.shape, float(m.rows[0, 0])
    ((21, 8), 0.125)

    >>> m = co_matrix("co-2", vocab, peak=1.0)
    >>> moto = [vocab.shapes.index(s) for s in vocab.category_members("motorcycle")]
    >>> [m.assigned_colors()[i] for i in moto]
    [4, 4, 4, 4]

    >>> co_matrix("co-1", vocab, peak=0.1)
    Traceback (most recent call last):
    ...
    clevrshift.errors.InvalidParameterError: peak must be in (0.125, 1], got 0.1

    """
    vocab = default_vocabulary() if vocab is None else vocab
    K = len(vocab.colors)
    if not 1.0 / K < peak <= 1.0:
        msg = f"peak must be in ({1.0 / K}, 1], got {peak}"
        raise InvalidParameterError(msg)

    match mode:
        case "co-0":
            rows = np.full((len(vocab.shapes), K), 1.0 / K)
        case "co-1":
            largest = max(len(vocab.category_members(c)) for c in vocab.categories)
            if largest > K:
                msg = f"co-1 needs at least {largest} colors"
                raise InvalidParameterError(msg)
            rows = np.stack(
                [
                    _peaked_row(
                        vocab.category_members(vocab.shape_to_category[s]).index(s),
                        K,
                        peak,
                    )
                    for s in vocab.shapes
                ]
            )
        case "co-2":
            if len(vocab.categories) > K:
                msg = f"co-2 needs at least {len(vocab.categories)} colors"
                raise InvalidParameterError(msg)
            rows = np.stack(
                [
                    _peaked_row(vocab.categories.index(vocab.shape_to_category[s]), K, peak)
                    for s in vocab.shapes
                ]
            )
        case _:
            msg = f"unknown compositionality mode {mode!r}; expected one of {CO_MODES}"
            raise InvalidParameterError(msg)

    return CoDistributionMatrix(rows, mode=mode)
