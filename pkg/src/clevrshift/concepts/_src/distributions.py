"""Concept distributions: power laws, dataset variants and sampling."""

__all__ = [
    "ConceptDistribution",
    "power_law_distribution",
    "variant_distribution",
    "sample_concept",
    "sample_rows",
    "DISTRIBUTION_AXES",
    "VARIANT_KINDS",
]

import math
from functools import partial
from typing import Final, final

import equinox as eqx
import jax
import jax.numpy as jnp
import jax.random as jr
import numpy as np
from jaxtyping import Array, Int, PRNGKeyArray

from .vocabulary import ConceptVocabulary, default_vocabulary
from clevrshift.errors import InvalidParameterError
from clevrshift.typing import CDF, RowMatrix, Shape, Weights

DISTRIBUTION_AXES: Final = ("shape", "color", "material")
VARIANT_KINDS: Final = ("bal", "slt", "long", "head", "tail", "oppo")

SLT_TAIL: Final = 1.3
LONG_TAIL: Final = 2.0
DEFAULT_CUT: Final = 0.5

_TOL: Final = 1e-9


def _as_weights(value: Array | list[float] | tuple[float, ...], /) -> Weights:
    return jnp.asarray(value, dtype=float)


@final
class ConceptDistribution(eqx.Module):  # type: ignore[misc]
    """Sampling weights over one concept axis, in canonical vocabulary order.

    Examples
    --------
    >>> from clevrshift.concepts import ConceptDistribution
    >>> dist = ConceptDistribution([0.25, 0.75], axis="material")
    >>> dist.size, dist.cdf().tolist()
    (2, [0.25, 1.0])

    >>> ConceptDistribution([0.5, 0.6])
    Traceback (most recent call last):
    ...
    clevrshift.errors.InvalidParameterError: weights must sum to 1, got 1.1

    """

    weights: Weights = eqx.field(converter=_as_weights)
    """Nonnegative probabilities summing to 1."""

    axis: str = eqx.field(default="shape", static=True)
    """One of ``shape``, ``color``, ``material``."""

    def __check_init__(self) -> None:
        if self.axis not in DISTRIBUTION_AXES:
            msg = f"axis must be one of {DISTRIBUTION_AXES}, got {self.axis!r}"
            raise InvalidParameterError(msg)
        w = np.asarray(self.weights)
        if w.ndim != 1 or w.size == 0:
            msg = "weights must be a non-empty vector"
            raise InvalidParameterError(msg)
        if (w < 0).any():
            msg = "weights must be nonnegative"
            raise InvalidParameterError(msg)
        if abs(float(w.sum()) - 1.0) > _TOL:
            msg = f"weights must sum to 1, got {round(float(w.sum()), 12)}"
            raise InvalidParameterError(msg)

    @property
    def size(self) -> int:
        """Number of concepts on the axis."""
        return int(self.weights.shape[0])

    def cdf(self) -> CDF:
        """Cumulative distribution, with the last entry exactly 1."""
        return _cdf(self.weights)


@jax.jit
def _cdf(weights: Weights) -> CDF:
    cdf = jnp.cumsum(weights)
    return cdf / cdf[-1]


# =============================================================================


def power_law_distribution(a: float, K: int, /, *, axis: str = "shape") -> ConceptDistribution:
    """Return the normalized power law ``d_i ∝ a^{-i}``, ``i = 0..K-1``.

    Examples
    --------
    >>> from clevrshift.concepts import power_law_distribution

    >>> power_law_distribution(1.0, 8, axis="color").weights.tolist()
    [0.125, 0.125, 0.125, 0.125, 0.125, 0.125, 0.125, 0.125]

    >>> [round(w, 4) for w in power_law_distribution(2.0, 4).weights.tolist()]
    [0.5333, 0.2667, 0.1333, 0.0667]

    >>> power_law_distribution(0.0, 4)
    Traceback (most recent call last):
    ...
    clevrshift.errors.InvalidParameterError: tail parameter a must be positive, got 0.0

    """
    if not a > 0:
        msg = f"tail parameter a must be positive, got {a}"
        raise InvalidParameterError(msg)
    if K < 1:
        msg = f"concept count K must be at least 1, got {K}"
        raise InvalidParameterError(msg)
    # Computed in log space so large K does not underflow before normalizing.
    logw = -np.arange(K, dtype=np.float64) * math.log(a)
    w = np.exp(logw - logw.max())
    return ConceptDistribution(w / w.sum(), axis=axis)


def variant_distribution(
    kind: str,
    axis: str,
    vocab: ConceptVocabulary | None = None,
    /,
    *,
    cut: float = DEFAULT_CUT,
) -> ConceptDistribution:
    """Return the distribution of a dataset variant on one axis.

    ``bal`` is uniform, ``slt`` and ``long`` are power laws with ``a = 1.3``
    and ``a = 2.0``, ``oppo`` is ``long`` reversed. ``head`` and ``tail``
    restrict ``long`` to the first ``ceil(K * cut)`` indices and to the rest.

    Examples
    --------
    >>> from clevrshift.concepts import variant_distribution

    >>> head = variant_distribution("head", "color")
    >>> [round(w, 4) for w in head.weights.tolist()]
    [0.5333, 0.2667, 0.1333, 0.0667, 0.0, 0.0, 0.0, 0.0]

    >>> long = variant_distribution("long", "color")
    >>> oppo = variant_distribution("oppo", "color")
    >>> oppo.weights.tolist() == long.weights.tolist()[::-1]
    True

    """
    vocab = default_vocabulary() if vocab is None else vocab
    if axis not in DISTRIBUTION_AXES:
        msg = f"axis must be one of {DISTRIBUTION_AXES}, got {axis!r}"
        raise InvalidParameterError(msg)
    if not 0 < cut < 1:
        msg = f"cut fraction must be in (0, 1), got {cut}"
        raise InvalidParameterError(msg)
    K = len(vocab.values(axis))

    match kind:
        case "bal":
            return power_law_distribution(1.0, K, axis=axis)
        case "slt":
            return power_law_distribution(SLT_TAIL, K, axis=axis)
        case "long":
            return power_law_distribution(LONG_TAIL, K, axis=axis)
        case "oppo":
            w = np.asarray(power_law_distribution(LONG_TAIL, K).weights)
            return ConceptDistribution(w[::-1].copy(), axis=axis)
        case "head" | "tail":
            if K < 2:  # noqa: PLR2004
                msg = f"head/tail splits need at least 2 concepts on {axis!r}"
                raise InvalidParameterError(msg)
            w = np.asarray(power_law_distribution(LONG_TAIL, K).weights).copy()
            n_head = min(max(math.ceil(K * cut), 1), K - 1)
            if kind == "head":
                w[n_head:] = 0.0
            else:
                w[:n_head] = 0.0
            return ConceptDistribution(w / w.sum(), axis=axis)
        case _:
            msg = f"unknown distribution kind {kind!r}; expected one of {VARIANT_KINDS}"
            raise InvalidParameterError(msg)


# =============================================================================
# Sampling


@partial(jax.jit, static_argnames=("shape",))
def _inverse_cdf(weights: Weights, key: PRNGKeyArray, shape: Shape) -> Int[Array, "..."]:
    cdf = _cdf(weights)
    u = jr.uniform(key, shape)
    idx = jnp.searchsorted(cdf, u, side="right")
    # Rounding in the cumulative sum must never select a zero-weight tail.
    last = weights.shape[0] - 1 - jnp.argmax(weights[::-1] > 0)
    return jnp.minimum(idx, last)


def sample_concept(
    dist: ConceptDistribution, key: PRNGKeyArray, /, shape: Shape = ()
) -> Int[Array, "..."]:
    """Draw concept indices from ``dist`` by inverse-CDF sampling.

    Examples
    --------
    >>> import jax.random as jr
    >>> from clevrshift.concepts import ConceptDistribution, sample_concept

    >>> dist = ConceptDistribution([1.0, 0.0, 0.0, 0.0])
    >>> sample_concept(dist, jr.key(0), (5,)).tolist()
    [0, 0, 0, 0, 0]

    """
    return _inverse_cdf(dist.weights, key, tuple(shape))


@jax.jit
def _inverse_cdf_rows(rows: RowMatrix, key: PRNGKeyArray) -> Int[Array, "n"]:
    cdf = jnp.cumsum(rows, axis=1)
    cdf = cdf / cdf[:, -1:]
    u = jr.uniform(key, (rows.shape[0], 1))
    idx = jnp.sum(cdf <= u, axis=1)
    last = rows.shape[1] - 1 - jnp.argmax(rows[:, ::-1] > 0, axis=1)
    return jnp.minimum(idx, last)


def sample_rows(rows: RowMatrix, key: PRNGKeyArray, /) -> Int[Array, "n"]:
    """Draw one index per row of a row-stochastic matrix.

    Used for compositional sampling, where each object's color comes from the
    row of its sampled shape.

    Examples
    --------
    >>> import jax.numpy as jnp
    >>> import jax.random as jr
    >>> from clevrshift.concepts import sample_rows

    >>> rows = jnp.array([[0.0, 1.0, 0.0], [1.0, 0.0, 0.0]])
    >>> sample_rows(rows, jr.key(1)).tolist()
    [1, 0]

    """
    rows = jnp.asarray(rows, dtype=float)
    if rows.shape[0] == 0:
        return jnp.zeros((0,), dtype=int)
    return _inverse_cdf_rows(rows, key)
