"""Question templates.

A template pairs a text form with a program skeleton. Skeleton filters and
relations carry placeholder literals (``"<Z>"``, ``"<R>"``, ...) that are
filled or dropped at instantiation.

Text slots name a referent's size ``<Z>``, color ``<C>``, material ``<M>``,
texture ``<T>``, shape or category noun ``<S>`` and relate clause ``<R>``.
A digit suffix selects the referent (``<S2>``), no suffix meaning the first,
in the order of :func:`referent_numbers`. Part slots are ``<P>`` (part noun),
``<PC>`` and ``<PM>`` (part color and material). ``<S>s`` and ``<P>s`` are
plural nouns.

Slots of anchor referents never appear: the anchor is rendered inside the
``<R>`` clause of the referent built on its relation.
"""

__all__ = [
    "Template",
    "FAMILIES",
    "OBJECT_FAMILIES",
    "PART_FAMILIES",
    "SLOT_PATTERN",
    "load_templates",
    "default_templates",
]

import re
from collections.abc import Mapping, Sequence
from importlib.resources import as_file, files
from pathlib import Path
from typing import Any, Final, final

import equinox as eqx

from .structure import anchor_chain, chains, filter_axis, referent_numbers
from clevrshift.errors import ProgramParseError, TemplateError
from clevrshift.programs import Program, parse_program
from clevrshift.utils import load_json

OBJECT_FAMILIES: Final = ("query", "count", "exist", "compare_integer", "compare_attribute")
PART_FAMILIES: Final = ("part_query", "part_identify")
FAMILIES: Final = OBJECT_FAMILIES + PART_FAMILIES

SLOT_PATTERN: Final = re.compile(r"<(PC|PM|P|Z|C|M|T|S|R)(\d*)>(s(?![a-z]))?")

# Text slot of each filter axis.
AXIS_SLOTS: Final = {
    "size": "Z",
    "color": "C",
    "material": "M",
    "texture": "T",
    "shape": "S",
    "category": "S",
    "part_name": "P",
    "part_color": "PC",
    "part_material": "PM",
}


def _slot(letter: str, k: int) -> str:
    return f"<{letter}{'' if k == 1 else k}>"


def _check_slots(template_id: str, text: str, skeleton: Program) -> None:
    numbers, part_head = referent_numbers(skeleton)
    table = chains(skeleton)

    required: set[str] = set()
    allowed: set[str] = set()
    for head, k in numbers.items():
        chain = table[head]
        allowed |= {_slot(s, k) for s in ("Z", "C", "M", "T", "S", "R")}
        if anchor_chain(skeleton, chain) is not None:
            required.add(_slot("R", k))
        required |= {_slot(AXIS_SLOTS[filter_axis(skeleton, f)], k) for f in chain.filters}
    if part_head is not None:
        allowed |= {"<P>", "<PC>", "<PM>"}
        required |= {f"<{AXIS_SLOTS[filter_axis(skeleton, f)]}>" for f in table[part_head].filters}

    present = {f"<{m.group(1)}{m.group(2)}>" for m in SLOT_PATTERN.finditer(text)}
    if missing := required - present:
        msg = f"template {template_id}: skeleton slots {sorted(missing)} missing from text"
        raise TemplateError(msg)
    if extra := present - allowed:
        msg = f"template {template_id}: text slots {sorted(extra)} have no referent"
        raise TemplateError(msg)

    for i, op in enumerate(skeleton.ops):
        if op.value_inputs and not op.value_inputs[0].startswith("<"):
            msg = f"template {template_id}: operation {i} has a fixed literal"
            raise TemplateError(msg)


@final
class Template(eqx.Module):  # type: ignore[misc]
    """A question template.

    Examples
    --------
    >>> from clevrshift.questions import default_templates
    >>> t = default_templates()["query_color"]
    >>> t.family, t.text
    ('query', 'What color is the <Z> <M> <T> <S> <R>?')

    """

    id: str
    family: str
    text: str
    skeleton: Program

    def __check_init__(self) -> None:
        if self.family not in FAMILIES:
            msg = f"template {self.id}: unknown family {self.family!r}"
            raise TemplateError(msg)
        _check_slots(self.id, self.text, self.skeleton)

    @property
    def is_part(self) -> bool:
        return self.family in PART_FAMILIES

    @property
    def requires_texture(self) -> bool:
        """Whether the template only makes sense on textured scenes."""
        return any(op.function == "query_texture" for op in self.skeleton.ops)

    @classmethod
    def from_record(cls, record: Mapping[str, Any], /) -> "Template":
        try:
            tid = str(record["id"])
            skeleton = parse_program(record["program"])
            return cls(id=tid, family=record["family"], text=record["text"], skeleton=skeleton)
        except KeyError as e:
            msg = f"template record is missing {e}"
            raise TemplateError(msg) from e
        except ProgramParseError as e:
            msg = f"template {record.get('id')!r}: {e}"
            raise TemplateError(msg) from e


def load_templates(path: str | Path | None = None, /) -> dict[str, Template]:
    """Load a template file, or the default inventory when ``path`` is `None`.

    The file is ``{"info": {"kind": "templates", ...}, "templates": [{"id",
    "family", "text", "program"}]}`` with CLEVR-style program records.
    """
    if path is None:
        with as_file(files("clevrshift.questions") / "data" / "templates.json") as p:
            payload = load_json(p, kind="templates")
    else:
        payload = load_json(path, kind="templates")

    records: Sequence[Mapping[str, Any]] = payload.get("templates", [])
    out: dict[str, Template] = {}
    for r in records:
        t = Template.from_record(r)
        if t.id in out:
            msg = f"duplicate template id {t.id!r}"
            raise TemplateError(msg)
        out[t.id] = t
    if not out:
        msg = "the template file defines no templates"
        raise TemplateError(msg)
    return out


_DEFAULT: dict[str, Template] | None = None


def default_templates() -> dict[str, Template]:
    """The shipped template inventory (loaded once)."""
    global _DEFAULT  # noqa: PLW0603
    if _DEFAULT is None:
        _DEFAULT = load_templates()
    return dict(_DEFAULT)
