"""The closed concept vocabulary."""

__all__ = [
    "ConceptVocabulary",
    "default_vocabulary",
    "load_vocabulary",
    "ATTRIBUTE_AXES",
]

from collections.abc import Iterable, Mapping, Sequence
from pathlib import Path
from typing import Any, Final, final

import equinox as eqx

from dataclassish import replace
from xmmutablemap import ImmutableMap

from clevrshift.errors import InvalidLiteralError, InvalidParameterError

ATTRIBUTE_AXES: Final = ("shape", "category", "color", "material", "size", "texture")
"""Axes an object can be filtered or described by."""

N_SHAPES: Final = 21
N_CATEGORIES: Final = 5
N_COLORS: Final = 8


def _names(value: Iterable[str], /) -> tuple[str, ...]:
    return tuple(str(v) for v in value)


def _name_map(value: Mapping[str, str], /) -> ImmutableMap[str, str]:
    return ImmutableMap({str(k): str(v) for k, v in value.items()})


def _list_map(value: Mapping[str, Iterable[str]], /) -> ImmutableMap[str, tuple[str, ...]]:
    return ImmutableMap({str(k): _names(v) for k, v in value.items()})


def _float_map(value: Mapping[str, float], /) -> ImmutableMap[str, float]:
    return ImmutableMap({str(k): float(v) for k, v in value.items()})


def _check_unique(name: str, values: Sequence[str], /) -> None:
    if len(set(values)) != len(values):
        dups = sorted({v for v in values if values.count(v) > 1})
        msg = f"{name} contains duplicates: {dups}"
        raise InvalidParameterError(msg)


@final
class ConceptVocabulary(eqx.Module):  # type: ignore[misc]
    """Closed world of concept names.

    The order of every name list is canonical: it defines the index used by
    distribution control, by likelihood tables and by tie-breaking.

    Examples
    --------
    >>> from clevrshift.concepts import default_vocabulary
    >>> vocab = default_vocabulary()
    >>> len(vocab.shapes), len(vocab.categories), len(vocab.colors)
    (21, 5, 8)
    >>> vocab.category_members("motorcycle")
    ('chopper', 'scooter', 'cruiser', 'dirtbike')
    >>> vocab.index("color", "blue")
    2

    """

    shapes: tuple[str, ...] = eqx.field(converter=_names)
    """Shape names (21)."""

    categories: tuple[str, ...] = eqx.field(converter=_names)
    """Category names (5)."""

    shape_to_category: ImmutableMap[str, str] = eqx.field(converter=_name_map)
    """Category of every shape."""

    colors: tuple[str, ...] = eqx.field(converter=_names)
    """Color names (8)."""

    materials: tuple[str, ...] = eqx.field(converter=_names)
    sizes: tuple[str, ...] = eqx.field(converter=_names)
    textures: tuple[str, ...] = eqx.field(converter=_names)

    parts: ImmutableMap[str, tuple[str, ...]] = eqx.field(converter=_list_map)
    """Ordered part names of every shape."""

    exterior_parts: ImmutableMap[str, tuple[str, ...]] = eqx.field(
        converter=_list_map
    )
    """Parts of every shape eligible for attribute perturbation."""

    size_radius: ImmutableMap[str, float] = eqx.field(converter=_float_map)
    """Footprint radius, in scene units, of every size."""

    def __check_init__(self) -> None:
        if len(self.shapes) != N_SHAPES:
            msg = f"expected {N_SHAPES} shapes, got {len(self.shapes)}"
            raise InvalidParameterError(msg)
        if len(self.categories) != N_CATEGORIES:
            msg = f"expected {N_CATEGORIES} categories, got {len(self.categories)}"
            raise InvalidParameterError(msg)
        if len(self.colors) != N_COLORS:
            msg = f"expected {N_COLORS} colors, got {len(self.colors)}"
            raise InvalidParameterError(msg)

        for name in ("shapes", "categories", "colors", "materials", "sizes", "textures"):
            values = getattr(self, name)
            if not values:
                msg = f"{name} must not be empty"
                raise InvalidParameterError(msg)
            _check_unique(name, values)
        if set(self.shapes) & set(self.categories):
            msg = "shape and category names must be distinct"
            raise InvalidParameterError(msg)

        if set(self.shape_to_category) != set(self.shapes):
            msg = "shape_to_category must map exactly the shapes"
            raise InvalidParameterError(msg)
        if not set(self.shape_to_category.values()) <= set(self.categories):
            msg = "shape_to_category maps to an unknown category"
            raise InvalidParameterError(msg)
        if empty := [c for c in self.categories if not self.category_members(c)]:
            msg = f"categories without shapes: {empty}"
            raise InvalidParameterError(msg)

        if set(self.parts) != set(self.shapes):
            msg = "parts must list the parts of exactly the shapes"
            raise InvalidParameterError(msg)
        for shape, names in self.parts.items():
            if not names:
                msg = f"shape {shape!r} has no parts"
                raise InvalidParameterError(msg)
            _check_unique(f"parts of {shape!r}", names)
            exterior = self.exterior_parts.get(shape, ())
            if not exterior or not set(exterior) <= set(names):
                msg = f"exterior parts of {shape!r} must be a non-empty subset of its parts"
                raise InvalidParameterError(msg)

        if set(self.size_radius) != set(self.sizes) or any(
            r <= 0 for r in self.size_radius.values()
        ):
            msg = "size_radius must give a positive radius for every size"
            raise InvalidParameterError(msg)

    # ---------------------------------------------------------------

    def values(self, axis: str, /) -> tuple[str, ...]:
        """Return the canonical names of ``axis``."""
        match axis:
            case "shape":
                return self.shapes
            case "category":
                return self.categories
            case "color":
                return self.colors
            case "material":
                return self.materials
            case "size":
                return self.sizes
            case "texture":
                return self.textures
            case "part":
                return self.part_names()
            case _:
                msg = f"unknown axis {axis!r}"
                raise InvalidParameterError(msg)

    def index(self, axis: str, value: str, /) -> int:
        """Return the canonical index of ``value`` on ``axis``."""
        values = self.values(axis)
        try:
            return values.index(value)
        except ValueError:
            msg = f"{value!r} is not a known {axis}"
            raise InvalidLiteralError(msg) from None

    def category_members(self, category: str, /) -> tuple[str, ...]:
        """Return the shapes of ``category`` in canonical order."""
        return tuple(s for s in self.shapes if self.shape_to_category[s] == category)

    def part_names(self) -> tuple[str, ...]:
        """Return every part name, in order of first appearance."""
        return tuple(dict.fromkeys(p for s in self.shapes for p in self.parts[s]))

    def radius(self, size: str, /) -> float:
        """Return the footprint radius of ``size``."""
        try:
            return self.size_radius[size]
        except KeyError:
            msg = f"{size!r} is not a known size"
            raise InvalidLiteralError(msg) from None


# =============================================================================
# Default vocabulary

_CATEGORY_SHAPES: Final = {
    "airplane": ("airliner", "biplane", "jet", "fighter"),
    "bicycle": ("utility bike", "tandem bike", "road bike", "mountain bike"),
    "bus": ("articulated bus", "double bus", "regular bus", "school bus"),
    "car": ("truck", "suv", "minivan", "sedan", "wagon"),
    "motorcycle": ("chopper", "scooter", "cruiser", "dirtbike"),
}

_WHEELS4: Final = (
    "front left wheel",
    "front right wheel",
    "back left wheel",
    "back right wheel",
)
_WHEELS2: Final = ("front wheel", "back wheel")

_PARTS: Final = {
    "airliner": ("left wing", "right wing", "fin", "left tailplane",
                 "right tailplane", "left engine", "right engine", "wheel"),
    "biplane": ("upper wing", "lower wing", "fin", "tailplane", "propeller", "wheel"),
    "jet": ("left wing", "right wing", "fin", "tailplane", "engine", "wheel"),
    "fighter": ("left wing", "right wing", "left fin", "right fin",
                "left tailplane", "right tailplane", "engine", "wheel"),
    "utility bike": (*_WHEELS2, "fork", "saddle", "handlebar", "pedal", "mudguard"),
    "tandem bike": (*_WHEELS2, "fork", "front saddle", "back saddle", "handlebar", "pedal"),
    "road bike": (*_WHEELS2, "fork", "saddle", "handlebar", "pedal"),
    "mountain bike": (*_WHEELS2, "fork", "saddle", "handlebar", "pedal", "suspension"),
    "articulated bus": (*_WHEELS4, "front door", "back door", "mirror", "license plate"),
    "double bus": (*_WHEELS4, "door", "mirror", "license plate", "roof"),
    "regular bus": (*_WHEELS4, "door", "mirror", "license plate"),
    "school bus": (*_WHEELS4, "door", "mirror", "license plate", "roof"),
    "truck": (*_WHEELS4, "left door", "right door", "hood", "bumper"),
    "suv": (*_WHEELS4, "left door", "right door", "hood", "back bumper"),
    "minivan": (*_WHEELS4, "left door", "right door", "hood", "trunk"),
    "sedan": (*_WHEELS4, "left door", "right door", "hood", "trunk"),
    "wagon": (*_WHEELS4, "left door", "right door", "hood", "roof"),
    "chopper": (*_WHEELS2, "fork", "seat", "handlebar", "exhaust", "headlight", "gas tank"),
    "scooter": (*_WHEELS2, "seat", "handlebar", "headlight", "footrest"),
    "cruiser": (*_WHEELS2, "fork", "seat", "handlebar", "exhaust", "headlight", "gas tank"),
    "dirtbike": (*_WHEELS2, "fork", "seat", "handlebar", "exhaust", "mudguard"),
}  # fmt: skip

# Small parts that are often hidden from view; never perturbed.
_HIDDEN_PARTS: Final = frozenset(
    {"pedal", "footrest", "license plate", "mirror", "exhaust"}
)


def _build_default() -> ConceptVocabulary:
    shapes = tuple(s for members in _CATEGORY_SHAPES.values() for s in members)
    return ConceptVocabulary(
        shapes=shapes,
        categories=tuple(_CATEGORY_SHAPES),
        shape_to_category={s: c for c, ms in _CATEGORY_SHAPES.items() for s in ms},
        colors=("gray", "red", "blue", "green", "brown", "purple", "cyan", "yellow"),
        materials=("rubber", "metal"),
        sizes=("large", "small"),
        textures=("checkered", "dotted", "striped", "zigzag",
                  "floral", "marbled", "camouflage", "starry"),  # fmt: skip
        parts=_PARTS,
        exterior_parts={
            s: tuple(p for p in ps if p not in _HIDDEN_PARTS) for s, ps in _PARTS.items()
        },
        size_radius={"large": 1.0, "small": 0.6},
    )


_DEFAULT: Final = _build_default()


def default_vocabulary() -> ConceptVocabulary:
    """Return the compiled-in vocabulary."""
    return _DEFAULT


def load_vocabulary(
    overrides: Mapping[str, Any] | str | Path, /, *, base: ConceptVocabulary | None = None
) -> ConceptVocabulary:
    """Return a vocabulary with fields overridden from a mapping or JSON file.

    Keys are :class:`ConceptVocabulary` field names. If ``parts`` is given
    without ``exterior_parts``, every part becomes eligible for perturbation.

    Examples
    --------
    >>> from clevrshift.concepts import load_vocabulary
    >>> vocab = load_vocabulary({"materials": ["rubber", "metal", "glass"]})
    >>> vocab.materials
    ('rubber', 'metal', 'glass')

    """
    if isinstance(overrides, str | Path):
        from clevrshift.utils import load_json

        overrides = load_json(overrides)
        if "vocabulary" in overrides:
            overrides = overrides["vocabulary"]

    base = _DEFAULT if base is None else base
    known = {
        "shapes", "categories", "shape_to_category", "colors", "materials",
        "sizes", "textures", "parts", "exterior_parts", "size_radius",
    }  # fmt: skip
    if unknown := set(overrides) - known:
        msg = f"unknown vocabulary keys: {sorted(unknown)}"
        raise InvalidParameterError(msg)

    changes = dict(overrides)
    if "parts" in changes and "exterior_parts" not in changes:
        changes["exterior_parts"] = changes["parts"]
    return replace(base, **changes)
