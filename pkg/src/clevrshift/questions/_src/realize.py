"""Surface realization of instantiated programs.

Rewrite rules, applied in order:

1. Each slot is replaced by the literal of the matching filter of its
   referent chain, or by nothing when the chain has no such filter. ``<S>``
   defaults to ``thing`` and ``<P>`` to ``part``; a shape filter wins over a
   category filter. ``<R>`` becomes ``<relation> the <anchor phrase>`` when
   the chain starts at a ``relate``, and nothing otherwise.
2. A slot followed by ``s`` takes the plural of its noun (``-es`` after
   ``s``, ``x``, ``ch`` and ``sh``).
3. Runs of spaces collapse and spaces before ``?`` disappear.
4. ``a`` becomes ``an`` before a vowel (``utility`` excepted) and the first
   letter is capitalized.
"""

__all__ = ["realize_text", "RELATION_PHRASES", "plural"]

import re
from typing import Final

from .structure import Chain, anchor_chain, chains, filter_axis, referent_numbers
from .templates import AXIS_SLOTS, SLOT_PATTERN, Template
from clevrshift.programs import Program

RELATION_PHRASES: Final = {
    "left": "left of",
    "right": "right of",
    "front": "in front of",
    "behind": "behind",
}

_DEFAULTS: Final = {"S": "thing", "P": "part"}
_ARTICLE: Final = re.compile(r"\b([Aa]) (?!utility\b)(?=[aeiouAEIOU])")


def plural(noun: str, /) -> str:
    """Return the plural of a (possibly multi-word) noun.

    Examples
    --------
    >>> from clevrshift.questions import plural
    >>> plural("school bus"), plural("thing"), plural("motorcycle")
    ('school buses', 'things', 'motorcycles')

    """
    if noun.endswith(("s", "x", "ch", "sh")):
        return noun + "es"
    return noun + "s"


def _fillers(program: Program, chain: Chain) -> dict[str, str]:
    out: dict[str, str] = {}
    for f in chain.filters:
        axis = filter_axis(program, f)
        letter = AXIS_SLOTS[axis]
        if axis == "category" and letter in out:
            continue
        out[letter] = str(program.ops[f].value)
    if (anchor := anchor_chain(program, chain)) is not None:
        relation = program.ops[chain.base].value
        out["R"] = f"{RELATION_PHRASES[str(relation)]} the {_phrase(program, anchor)}"
    return out


def _phrase(program: Program, chain: Chain) -> str:
    """The noun phrase of an anchor: its attributes, noun and own relation."""
    fill = _fillers(program, chain)
    words = [fill.get(k, _DEFAULTS.get(k, "")) for k in ("Z", "C", "M", "T", "S", "R")]
    return " ".join(w for w in words if w)


def _tidy(text: str) -> str:
    text = re.sub(r"\s+", " ", text).strip().replace(" ?", "?")
    text = _ARTICLE.sub(r"\1n ", text)
    return text[:1].upper() + text[1:]


def realize_text(program: Program, template: Template, /) -> str:
    """Render the question text of an instantiated program.

    Examples
    --------
    >>> from clevrshift.programs import Operation, Program
    >>> from clevrshift.questions import default_templates, realize_text
    >>> templates = default_templates()

    >>> prog = Program.from_ops([
    ...     Operation("scene"), Operation("filter_category", [0], ["motorcycle"]),
    ...     Operation("count", [1])])
    >>> realize_text(prog, templates["count"])
    'How many motorcycles are there?'

    >>> prog = Program.from_ops([
    ...     Operation("scene"), Operation("filter_color", [0], ["cyan"]),
    ...     Operation("filter_category", [1], ["car"]), Operation("unique", [2]),
    ...     Operation("relate", [3], ["behind"]), Operation("filter_size", [4], ["large"]),
    ...     Operation("filter_category", [5], ["bus"]), Operation("unique", [6]),
    ...     Operation("query_color", [7])])
    >>> realize_text(prog, templates["query_color_hop"])
    'What color is the large bus behind the cyan car?'

    """
    numbers, part_head = referent_numbers(program)
    table = chains(program)

    fillers: dict[str, str] = {}
    for head, k in numbers.items():
        suffix = "" if k == 1 else str(k)
        for letter, word in _fillers(program, table[head]).items():
            fillers[f"<{letter}{suffix}>"] = word
    if part_head is not None:
        for letter, word in _fillers(program, table[part_head]).items():
            fillers[f"<{letter}>"] = word

    def substitute(m: re.Match[str]) -> str:
        letter, suffix, plural_s = m.groups()
        word = fillers.get(f"<{letter}{suffix}>", _DEFAULTS.get(letter, ""))
        return plural(word) if plural_s and word else word

    return _tidy(SLOT_PATTERN.sub(substitute, template.text))
