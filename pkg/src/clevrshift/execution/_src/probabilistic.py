"""Probabilistic execution over a perceived scene.

The executor keeps a selection vector ``p`` with one entry per detection (or
per detected part) and updates it step by step:

- ``scene`` selects everything with probability 1;
- ``filter_*`` multiplies ``p`` by the detection's likelihood of the literal;
- ``relate`` and ``same_*`` emit a fresh vector relative to an anchor;
- ``intersect`` and ``union`` are the pointwise product and its dual;
- ``unique`` picks the argmax as anchor;
- ``count`` and ``exist`` threshold ``p``;
- ``query_*`` returns the value with the largest joint likelihood; after a
  ``unique`` only the anchor's row takes part.
"""

__all__ = [
    "ProbExecConfig",
    "ProbObjectSet",
    "ProbObject",
    "ProbPartSet",
    "ProbPart",
    "ProbValue",
    "RELATION_MODES",
    "QUERY_RULES",
    "op_scene",
    "op_filter",
    "op_part_filter",
    "op_relate",
    "op_same",
    "op_intersect",
    "op_union",
    "op_unique_select",
    "op_count",
    "op_exist",
    "op_query",
    "execute_prob",
    "execute_prob_trace",
]

from collections.abc import Sequence
from functools import partial
from typing import Any, Final, TypeAlias, final

import equinox as eqx
import jax
import jax.numpy as jnp
import numpy as np
from jaxtyping import Array, Float, Int
from plum import dispatch

from .deterministic import AttributeValue, BooleanValue, IntegerValue, to_answer
from clevrshift.concepts import ConceptVocabulary, default_vocabulary
from clevrshift.errors import (
    EmptySelectionError,
    InvalidLiteralError,
    InvalidParameterError,
    LengthMismatchError,
    MissingTextureError,
)
from clevrshift.perception import PerceivedScene
from clevrshift.programs import Answer, Operation, Program
from clevrshift.scenes import RELATIONS
from clevrshift.typing import Centers, SelectionVector, Table

RELATION_MODES: Final = ("soft", "hard")
QUERY_RULES: Final = ("joint-argmax", "expected-sum")


@final
class ProbExecConfig(eqx.Module):  # type: ignore[misc]
    """Parameters of the probabilistic executor.

    ``a`` and ``b`` are expressed in image-plane pixels.
    """

    a: float = eqx.field(default=20.0, converter=float, static=True)
    """Relation offset."""

    b: float = eqx.field(default=0.02, converter=float, static=True)
    """Relation sharpness."""

    select_threshold: float = eqx.field(default=0.7, converter=float, static=True)
    """Selection threshold of ``count`` and ``exist``."""

    strict: bool = eqx.field(default=True, static=True)
    """Whether an entry must exceed (rather than reach) the threshold."""

    relation_mode: str = eqx.field(default="soft", static=True)
    query_rule: str = eqx.field(default="joint-argmax", static=True)

    def __check_init__(self) -> None:
        if self.b <= 0:
            msg = f"b must be positive, got {self.b}"
            raise InvalidParameterError(msg)
        if not 0 < self.select_threshold < 1:
            msg = f"select_threshold must be in (0, 1), got {self.select_threshold}"
            raise InvalidParameterError(msg)
        if self.relation_mode not in RELATION_MODES:
            msg = f"relation_mode must be one of {RELATION_MODES}, got {self.relation_mode!r}"
            raise InvalidParameterError(msg)
        if self.query_rule not in QUERY_RULES:
            msg = f"query_rule must be one of {QUERY_RULES}, got {self.query_rule!r}"
            raise InvalidParameterError(msg)

    def to_dict(self) -> dict[str, Any]:
        return {
            "a": self.a,
            "b": self.b,
            "select_threshold": self.select_threshold,
            "strict": self.strict,
            "relation_mode": self.relation_mode,
            "query_rule": self.query_rule,
        }


# =============================================================================
# Values


@final
class ProbObjectSet(eqx.Module):  # type: ignore[misc]
    p: SelectionVector


@final
class ProbObject(eqx.Module):  # type: ignore[misc]
    """An anchor object together with the vector it was selected from.

    Queries read the anchor's row only.
    """

    p: SelectionVector
    index: int = eqx.field(static=True)
    confidence: float = eqx.field(static=True)


@final
class ProbPartSet(eqx.Module):  # type: ignore[misc]
    p: Float[Array, "m"]


@final
class ProbPart(eqx.Module):  # type: ignore[misc]
    p: Float[Array, "m"]
    index: int = eqx.field(static=True)
    confidence: float = eqx.field(static=True)


ProbValue: TypeAlias = (
    ProbObjectSet
    | ProbObject
    | ProbPartSet
    | ProbPart
    | IntegerValue
    | BooleanValue
    | AttributeValue
)


# =============================================================================
# Kernels


@partial(jax.jit, inline=True)
def _weigh(p: SelectionVector, likelihood: SelectionVector) -> SelectionVector:
    return p * likelihood


@partial(jax.jit, static_argnames=("relation", "hard"))
def _relate_kernel(
    centers: Centers, i: Int[Array, ""], a: float, b: float, *, relation: str, hard: bool
) -> SelectionVector:
    offset = centers - centers[i]
    dx, dy = offset[:, 0], offset[:, 1]
    signed = {"right": dx, "left": -dx, "front": dy, "behind": -dy}[relation]
    p = (signed > 0).astype(float) if hard else jax.nn.sigmoid(b * (signed + a))
    return p.at[i].set(0.0)


@partial(jax.jit, inline=True)
def _cosine_kernel(table: Table, i: Int[Array, ""]) -> SelectionVector:
    norms = jnp.linalg.norm(table, axis=1)
    sim = (table @ table[i]) / jnp.maximum(norms * norms[i], jnp.finfo(float).tiny)
    return jnp.clip(sim, 0.0, 1.0).at[i].set(0.0)


@partial(jax.jit, inline=True)
def _union_kernel(p1: SelectionVector, p2: SelectionVector) -> SelectionVector:
    return 1 - (1 - p1) * (1 - p2)


@partial(jax.jit, static_argnames=("rule",))
def _query_kernel(p: SelectionVector, table: Table, *, rule: str) -> Int[Array, ""]:
    joint = p[:, None] * table
    scores = joint.max(axis=0) if rule == "joint-argmax" else joint.sum(axis=0)
    return jnp.argmax(scores)


@partial(jax.jit, static_argnames=("num_segments",))
def _part_to_object_kernel(
    p: Float[Array, "m"], owner: Int[Array, "m"], *, num_segments: int
) -> SelectionVector:
    best = jax.ops.segment_max(p, owner, num_segments=num_segments)
    return jnp.maximum(best, 0.0)


# =============================================================================
# Per-operation rules


def op_scene(pscene: PerceivedScene, /) -> SelectionVector:
    """Select every detection with probability 1."""
    return jnp.ones(pscene.n)


def _likelihood(
    pscene: PerceivedScene, axis: str, value: str, vocab: ConceptVocabulary
) -> SelectionVector:
    if axis == "category":
        vocab.index("category", value)
        members = [vocab.index("shape", s) for s in vocab.category_members(value)]
        return pscene.shape[:, jnp.asarray(members)].sum(axis=1)
    k = vocab.index(axis, value)
    table = pscene.table(axis)
    if table is None:
        return jnp.zeros(pscene.n)
    return table[:, k]


def op_filter(
    p: SelectionVector,
    pscene: PerceivedScene,
    axis: str,
    value: str,
    /,
    *,
    vocab: ConceptVocabulary | None = None,
) -> SelectionVector:
    """Multiply ``p`` by every detection's likelihood of ``value``.

    ``category`` uses the summed likelihood of its member shapes. Without a
    texture table nothing passes a texture filter.

    Examples
    --------
    >>> import jax.numpy as jnp
    >>> from clevrshift.execution import op_filter
    >>> from clevrshift.perception import one_hot
    >>> from clevrshift.scenes import GenConfig, sample_scene
    >>> ps = one_hot(sample_scene(GenConfig.from_variants("mid"), 0))
    >>> p = op_filter(jnp.ones(ps.n), ps, "shape", "sedan")
    >>> bool(((p == 0) | (p == 1)).all())
    True

    """
    vocab = default_vocabulary() if vocab is None else vocab
    return _weigh(p, _likelihood(pscene, axis, value, vocab))


def op_part_filter(
    p: Float[Array, "m"],
    pscene: PerceivedScene,
    axis: str,
    value: str,
    /,
    *,
    vocab: ConceptVocabulary | None = None,
) -> Float[Array, "m"]:
    """Part-level filter; part names are read off the detections exactly."""
    vocab = default_vocabulary() if vocab is None else vocab
    if axis == "name":
        vocab.index("part", value)
        mask = jnp.asarray([n == value for n in pscene.part_names], dtype=float)
        return _weigh(p, mask.reshape(pscene.m))
    k = vocab.index(axis, value)
    table = pscene.part_table(axis)
    if table is None:
        return jnp.zeros(pscene.m)
    return _weigh(p, table[:, k])


def op_relate(
    anchor: int, pscene: PerceivedScene, relation: str, cfg: ProbExecConfig | None = None, /
) -> SelectionVector:
    """Probability that each detection bears ``relation`` to ``anchor``.

    Soft mode evaluates ``sigmoid(b * (offset + a))`` on the signed offset
    along the relation's axis; hard mode is the crisp indicator. The anchor
    itself gets 0.

    Examples
    --------
    >>> import jax.numpy as jnp
    >>> from clevrshift.execution import op_relate
    >>> from clevrshift.perception import PerceivedScene
    >>> ps = PerceivedScene(
    ...     centers=[[0.0, 0.0], [80.0, 0.0]], shape=[[1.0], [1.0]],
    ...     color=[[1.0], [1.0]], material=[[1.0], [1.0]], size=[[1.0], [1.0]],
    ...     texture=None, part_owner=[], part_color=jnp.zeros((0, 1)),
    ...     part_material=jnp.zeros((0, 1)), part_texture=None, part_names=(),
    ...     gt_ids=(0, 1))
    >>> op_relate(0, ps, "right").round(4).tolist()
    [0.0, 0.8808]

    """
    cfg = ProbExecConfig() if cfg is None else cfg
    if relation not in RELATIONS:
        msg = f"unknown relation {relation!r}"
        raise InvalidLiteralError(msg)
    return _relate_kernel(
        pscene.centers,
        jnp.asarray(anchor),
        cfg.a,
        cfg.b,
        relation=relation,
        hard=cfg.relation_mode == "hard",
    )


def op_same(anchor: int, pscene: PerceivedScene, axis: str, /) -> SelectionVector:
    """Cosine similarity of every detection's ``axis`` table to the anchor's.

    Raw tables are compared; the anchor itself gets 0.
    """
    table = pscene.table(axis)
    if table is None:
        return jnp.zeros(pscene.n)
    return _cosine_kernel(table, jnp.asarray(anchor))


def _check_lengths(p1: Array, p2: Array) -> None:
    if p1.shape != p2.shape:
        msg = f"cannot combine selections of length {p1.shape[0]} and {p2.shape[0]}"
        raise LengthMismatchError(msg)


def op_intersect(p1: SelectionVector, p2: SelectionVector, /) -> SelectionVector:
    """Pointwise product."""
    _check_lengths(p1, p2)
    return _weigh(p1, p2)


def op_union(p1: SelectionVector, p2: SelectionVector, /) -> SelectionVector:
    """``1 - (1 - p1) * (1 - p2)``.

    Examples
    --------
    >>> import jax.numpy as jnp
    >>> from clevrshift.execution import op_union
    >>> op_union(jnp.array([0.5]), jnp.array([0.5])).tolist()
    [0.75]

    """
    _check_lengths(p1, p2)
    return _union_kernel(p1, p2)


def op_unique_select(p: SelectionVector, /) -> tuple[int, float]:
    """Return the argmax of ``p`` (lowest index on ties) and its probability.

    Examples
    --------
    >>> import jax.numpy as jnp
    >>> from clevrshift.execution import op_unique_select
    >>> op_unique_select(jnp.array([0.2, 0.9, 0.1]))
    (1, 0.9)
    >>> op_unique_select(jnp.array([0.5, 0.5]))
    (0, 0.5)

    """
    if p.shape[0] == 0:
        msg = "unique on an empty selection"
        raise EmptySelectionError(msg)
    i = int(jnp.argmax(p))
    return i, float(p[i])


def op_count(p: SelectionVector, cfg: ProbExecConfig | None = None, /) -> int:
    """Number of entries above the selection threshold.

    Examples
    --------
    >>> import jax.numpy as jnp
    >>> from clevrshift.execution import op_count
    >>> op_count(jnp.array([0.9, 0.71, 0.69])), op_count(jnp.array([0.7]))
    (2, 0)

    """
    cfg = ProbExecConfig() if cfg is None else cfg
    t = cfg.select_threshold
    selected = p > t if cfg.strict else p >= t
    return int(np.asarray(selected).sum())


def op_exist(p: SelectionVector, cfg: ProbExecConfig | None = None, /) -> bool:
    return op_count(p, cfg) > 0


def op_query(
    p: SelectionVector,
    table: Table | None,
    values: Sequence[str],
    cfg: ProbExecConfig | None = None,
    /,
) -> str:
    """Return the value with the largest joint (or expected) likelihood.

    Examples
    --------
    >>> import jax.numpy as jnp
    >>> from clevrshift.execution import op_query
    >>> table = jnp.array([[0.6, 0.4], [0.1, 0.9]])
    >>> op_query(jnp.array([0.9, 0.8]), table, ["red", "blue"])
    'blue'

    """
    cfg = ProbExecConfig() if cfg is None else cfg
    if p.shape[0] == 0:
        msg = "query on an empty selection"
        raise EmptySelectionError(msg)
    if table is None:
        msg = "the perceived scene has no texture tables"
        raise MissingTextureError(msg)
    return values[int(_query_kernel(p, table, rule=cfg.query_rule))]


# =============================================================================
# Interpretation


@dispatch
def _filter(
    pscene: PerceivedScene, x: ProbObjectSet, axis: str, value: str, vocab: ConceptVocabulary, /
) -> ProbObjectSet:
    return ProbObjectSet(op_filter(x.p, pscene, axis, value, vocab=vocab))


@dispatch
def _filter(
    pscene: PerceivedScene, x: ProbPartSet, axis: str, value: str, vocab: ConceptVocabulary, /
) -> ProbPartSet:
    return ProbPartSet(op_part_filter(x.p, pscene, axis, value, vocab=vocab))


@dispatch
def _unique(x: ProbObjectSet, /) -> ProbObject:
    return ProbObject(x.p, *op_unique_select(x.p))


@dispatch
def _unique(x: ProbPartSet, /) -> ProbPart:
    return ProbPart(x.p, *op_unique_select(x.p))


def _anchored(x: ProbObject | ProbPart, /) -> Float[Array, "n"]:
    return jax.nn.one_hot(x.index, x.p.shape[0])


@dispatch
def _query(
    pscene: PerceivedScene,
    x: ProbObject,
    axis: str,
    cfg: ProbExecConfig,
    vocab: ConceptVocabulary,
    /,
) -> AttributeValue:
    return AttributeValue(
        axis, op_query(_anchored(x), pscene.table(axis), vocab.values(axis), cfg)
    )


@dispatch
def _query(
    pscene: PerceivedScene,
    x: ProbPart,
    axis: str,
    cfg: ProbExecConfig,
    vocab: ConceptVocabulary,
    /,
) -> AttributeValue:
    return AttributeValue(
        axis, op_query(_anchored(x), pscene.part_table(axis), vocab.values(axis), cfg)
    )


@dispatch
def _object_to_part(pscene: PerceivedScene, x: ProbObject, /) -> ProbPartSet:
    owned = pscene.part_owner == x.index
    return ProbPartSet(jnp.where(owned, x.confidence, 0.0))


@dispatch
def _object_to_part(pscene: PerceivedScene, x: ProbObjectSet, /) -> ProbPartSet:
    return ProbPartSet(x.p[pscene.part_owner])


def _apply(
    pscene: PerceivedScene,
    op: Operation,
    args: Sequence[ProbValue],
    cfg: ProbExecConfig,
    vocab: ConceptVocabulary,
) -> ProbValue:
    head, _, axis = op.function.partition("_")
    match head, args:
        case "scene", ():
            return ProbObjectSet(op_scene(pscene))
        case "filter", (x,):
            return _filter(pscene, x, "name" if axis == "part_name" else axis, op.value, vocab)
        case "unique", (x,):
            return _unique(x)
        case "relate", (ProbObject(index=i),):
            return ProbObjectSet(op_relate(i, pscene, op.value, cfg))
        case "same", (ProbObject(index=i),):
            return ProbObjectSet(op_same(i, pscene, axis))
        case "intersect", (ProbObjectSet(p=a), ProbObjectSet(p=b)):
            return ProbObjectSet(op_intersect(a, b))
        case "union", (ProbObjectSet(p=a), ProbObjectSet(p=b)):
            return ProbObjectSet(op_union(a, b))
        case "count", (ProbObjectSet(p=a),):
            return IntegerValue(op_count(a, cfg))
        case "exist", (ProbObjectSet(p=a),):
            return BooleanValue(op_exist(a, cfg))
        case "query", (x,):
            return _query(pscene, x, axis, cfg, vocab)
        case "equal", (IntegerValue(value=a), IntegerValue(value=b)):
            return BooleanValue(a == b)
        case "equal", (AttributeValue(value=a), AttributeValue(value=b)):
            return BooleanValue(a == b)
        case "less", (IntegerValue(value=a), IntegerValue(value=b)):
            return BooleanValue(a < b)
        case "greater", (IntegerValue(value=a), IntegerValue(value=b)):
            return BooleanValue(a > b)
        case "object", (x,):
            return _object_to_part(pscene, x)
        case "part", (ProbPartSet(p=pp),):
            return ProbObjectSet(
                _part_to_object_kernel(pp, pscene.part_owner, num_segments=pscene.n)
            )
    msg = f"cannot apply {op.function} to {[type(a).__name__ for a in args]}"
    raise TypeError(msg)


def execute_prob_trace(
    program: Program,
    pscene: PerceivedScene,
    cfg: ProbExecConfig | None = None,
    /,
    *,
    vocab: ConceptVocabulary | None = None,
) -> tuple[ProbValue, ...]:
    """Return the value of every step of ``program`` on ``pscene``."""
    cfg = ProbExecConfig() if cfg is None else cfg
    vocab = default_vocabulary() if vocab is None else vocab
    values: list[ProbValue] = []
    for op in program.ops:
        values.append(_apply(pscene, op, [values[j] for j in op.inputs], cfg, vocab))
    return tuple(values)


def execute_prob(
    program: Program,
    pscene: PerceivedScene,
    cfg: ProbExecConfig | None = None,
    /,
    *,
    vocab: ConceptVocabulary | None = None,
) -> Answer:
    """Execute ``program`` on a perceived scene.

    Comparisons resolve their operands first (counts by threshold,
    attributes by query) and then compare exactly.

    Raises
    ------
    EmptySelectionError
        A ``unique`` or ``query`` step had no detections to choose from.
    MissingTextureError
        ``query_texture`` on a scene perceived without texture tables.
    InvalidLiteralError
        A literal is not in the vocabulary.

    """
    return to_answer(execute_prob_trace(program, pscene, cfg, vocab=vocab)[-1])
