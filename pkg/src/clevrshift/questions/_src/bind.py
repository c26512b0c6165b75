"""Binding a template skeleton to a scene.

Operations are bound in program order. Filters are not bound where they
stand: a filter chain is bound as a whole when its head is first consumed,
and how depends on the consumer.

- A chain feeding ``unique`` singles out a referent. Candidates are tried in
  random order and, for each, random subsets of its attributes (each slot
  kept with probability one half) before the full set, until the filters
  select exactly that referent. Objects already used as referents are not
  candidates again.
- A chain feeding anything else (``count``, ``exist``, ``part_to_object``)
  describes a set. Object sets are seeded from a member of the base set
  half of the time, from random vocabulary values otherwise. Part sets are
  always seeded from a real part and always keep its name.
- ``relate`` picks uniformly among the relations that relate something to
  its anchor.

A ``shape`` slot becomes a ``category`` filter half of the time; texture
slots bind only on textured scenes.
"""

__all__ = ["bind_template", "SUBSET_TRIES"]

import logging
from collections.abc import Hashable, Sequence
from functools import cache
from typing import Final, TypeAlias

from .structure import Chain, chains, filter_axis
from .templates import Template
from clevrshift.concepts import ConceptVocabulary
from clevrshift.execution import (
    ExecValue,
    ObjectSetValue,
    ObjectValue,
    PartSetValue,
    apply_operation,
)
from clevrshift.programs import Operation, Program
from clevrshift.scenes import RELATIONS, Scene
from clevrshift.utils import RandomStream

logger = logging.getLogger(__name__)

SUBSET_TRIES: Final = 10
"""Random attribute subsets tried per candidate referent before the full set."""

Binding: TypeAlias = tuple[str, str] | None
"""A bound filter ``(function, literal)``; `None` drops the filter."""


class _NoFit(Exception):
    pass


@cache
def _filter_op(function: str, literal: str, /) -> Operation:
    return Operation(function, (), (literal,))


def _members(x: ExecValue) -> frozenset[Hashable]:
    match x:
        case ObjectSetValue(ids=ids):
            return ids
        case PartSetValue(parts=parts):
            return parts
    msg = f"{type(x).__name__} is not a set"
    raise TypeError(msg)


class _Binder:
    __slots__ = (
        "bound",
        "counted",
        "memo",
        "program",
        "referents",
        "rng",
        "scene",
        "table",
        "values",
        "vocab",
    )

    def __init__(
        self, program: Program, scene: Scene, rng: RandomStream, vocab: ConceptVocabulary
    ) -> None:
        self.program = program
        self.scene = scene
        self.rng = rng
        self.vocab = vocab
        self.table = chains(program)
        self.values: dict[int, ExecValue] = {}
        self.bound: dict[int, Binding] = {}
        self.referents: set[int] = set()
        self.counted: list[frozenset[Binding]] = []
        self.memo: dict[tuple[Hashable, ...], ExecValue] = {}

    def bind(self) -> Program:
        filters = {f for c in self.table.values() for f in c.filters}
        for i, op in enumerate(self.program.ops):
            if i in filters:
                continue
            args = [self._input(j, op.function) for j in op.inputs]
            match op.function, args:
                case "relate", [ObjectValue(id=anchor)]:
                    options = [r for r in RELATIONS if self.scene.relate(anchor, r)]
                    if not options:
                        msg = f"nothing is related to object {anchor}"
                        raise _NoFit(msg)
                    relation = self.rng.choice(options)
                    self.bound[i] = ("relate", relation)
                    self.values[i] = ObjectSetValue(self.scene.relate(anchor, relation))
                case _:
                    value = apply_operation(self.scene, op, args, index=i)
                    if isinstance(value, ObjectValue):
                        self.referents.add(value.id)
                    self.values[i] = value

        if len(set(self.counted)) != len(self.counted):
            msg = "two counted sets have the same description"
            raise _NoFit(msg)
        return self._build()

    def _input(self, j: int, consumer: str) -> ExecValue:
        if j not in self.values:
            chain = self.table[j]
            if consumer == "unique":
                self._bind_referent(chain)
            else:
                self._bind_set(chain)
                if consumer == "count":
                    self.counted.append(frozenset(self.bound[f] for f in chain.filters))
        return self.values[j]

    # ---------------------------------------------------------------
    # Filter values

    def _slot_function(self, f: int) -> str:
        function = self.program.ops[f].function
        if function == "filter_shape" and self.rng.bernoulli(0.5):
            return "filter_category"
        return function

    def _object_slot(self, f: int, obj: int) -> Binding:
        function = self._slot_function(f)
        value = self.scene.objects[obj].attribute(function.removeprefix("filter_"))
        return None if value is None else (function, value)

    def _part_slot(self, f: int, part: tuple[int, str]) -> Binding:
        owner, name = part
        axis = filter_axis(self.program, f).removeprefix("part_")
        value = self.scene.objects[owner].part(name).attribute(axis)
        return None if value is None else (self.program.ops[f].function, value)

    def _random_slot(self, f: int) -> Binding:
        function = self._slot_function(f)
        axis = function.removeprefix("filter_")
        if axis == "texture" and not self.scene.textured:
            return None
        return function, self.rng.choice(self.vocab.values(axis))

    # ---------------------------------------------------------------
    # Chains

    def _run(self, chain: Chain, bindings: Sequence[Binding]) -> list[ExecValue]:
        """Values of the chain's filters under ``bindings``.

        Values are memoized by base and applied filters, so candidate
        bindings that share a prefix filter it once.
        """
        x = self.values[chain.base]
        key: tuple[Hashable, ...] = (chain.base,)
        out = []
        for b in bindings:
            if b is not None:
                key = (*key, b)
                if (hit := self.memo.get(key)) is None:
                    hit = self.memo[key] = apply_operation(self.scene, _filter_op(*b), [x])
                x = hit
            out.append(x)
        return out

    def _selection(self, chain: Chain, bindings: Sequence[Binding]) -> frozenset[Hashable]:
        values = self._run(chain, bindings)
        return _members(values[-1] if values else self.values[chain.base])

    def _commit(self, chain: Chain, bindings: Sequence[Binding]) -> None:
        values = self._run(chain, bindings)
        for f, b, v in zip(chain.filters, bindings, values, strict=True):
            self.bound[f] = b
            self.values[f] = v

    def _bind_referent(self, chain: Chain) -> None:
        base = self.values[chain.base]
        candidates = sorted(_members(base) - self.referents)
        for target in self.rng.shuffled(candidates):
            if chain.level == "object":
                full = [self._object_slot(f, target) for f in chain.filters]
            else:
                full = [self._part_slot(f, target) for f in chain.filters]

            tries = [
                [b if self.rng.bernoulli(0.5) else None for b in full]
                for _ in range(SUBSET_TRIES)
            ]
            for bindings in [*tries, full]:
                if self._selection(chain, bindings) == {target}:
                    self._commit(chain, bindings)
                    return
        msg = f"no referent of chain {chain.head} can be singled out"
        raise _NoFit(msg)

    def _bind_set(self, chain: Chain) -> None:
        members = sorted(_members(self.values[chain.base]))
        bindings: list[Binding] = []
        if chain.level == "part":
            if not members:
                msg = "no parts to describe"
                raise _NoFit(msg)
            part = self.rng.choice(members)
            for f in chain.filters:
                keep = filter_axis(self.program, f) == "part_name" or self.rng.bernoulli(0.5)
                bindings.append(self._part_slot(f, part) if keep else None)
        else:
            seed = self.rng.choice(members) if members and self.rng.bernoulli(0.5) else None
            for f in chain.filters:
                if not self.rng.bernoulli(0.5):
                    bindings.append(None)
                elif seed is None:
                    bindings.append(self._random_slot(f))
                else:
                    bindings.append(self._object_slot(f, seed))
        self._commit(chain, bindings)

    # ---------------------------------------------------------------

    def _build(self) -> Program:
        alias: dict[int, int] = {}
        ops: list[Operation] = []
        for i, op in enumerate(self.program.ops):
            inputs = [alias[j] for j in op.inputs]
            if i not in self.bound:
                ops.append(Operation(op.function, inputs))
            elif (b := self.bound[i]) is None:
                (alias[i],) = inputs
                continue
            else:
                ops.append(Operation(b[0], inputs, [b[1]]))
            alias[i] = len(ops) - 1
        return Program.from_ops(ops)


def bind_template(
    template: Template, scene: Scene, rng: RandomStream, /, *, vocab: ConceptVocabulary
) -> Program | None:
    """Fill the slots of ``template`` on ``scene``.

    Returns `None` when the scene cannot instantiate the template: no
    referent can be singled out, an anchor has nothing related to it, or two
    counted sets would be described identically.
    """
    if template.requires_texture and not scene.textured:
        return None
    try:
        return _Binder(template.skeleton, scene, rng, vocab).bind()
    except _NoFit as e:
        logger.debug("template %s does not fit scene %d: %s", template.id, scene.scene_id, e)
        return None
