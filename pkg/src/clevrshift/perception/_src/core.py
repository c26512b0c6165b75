"""Perceived scenes: per-detection likelihood tables."""

__all__ = ["PerceivedScene", "OBJECT_AXES", "PART_AXES", "DEFAULT_PIXELS_PER_UNIT"]

from typing import Final, final

import equinox as eqx
import jax.numpy as jnp
import numpy as np
from jaxtyping import Array, Float, Int

from clevrshift.errors import InvalidLiteralError, InvalidParameterError

OBJECT_AXES: Final = ("shape", "color", "material", "size", "texture")
PART_AXES: Final = ("color", "material", "texture")
DEFAULT_PIXELS_PER_UNIT: Final = 48.0

_TOL: Final = 1e-6


def _table(value: Array | np.ndarray | list[list[float]], /) -> Float[Array, "n _"]:
    return jnp.asarray(value, dtype=float)


def _maybe_table(value: Array | np.ndarray | None, /) -> Float[Array, "n _"] | None:
    return None if value is None else _table(value)


@final
class PerceivedScene(eqx.Module):  # type: ignore[misc]
    """A scene as seen by a noisy parser.

    Detections are rows of the object tables, detected parts rows of the
    part tables. Tables are categorical distributions in the canonical order
    of the vocabulary axis they describe.

    Examples
    --------
    >>> from clevrshift.perception import one_hot
    >>> from clevrshift.scenes import GenConfig, sample_scene
    >>> ps = one_hot(sample_scene(GenConfig.from_variants("mid"), 0))
    >>> ps.color.shape[1], ps.texture is None
    (8, True)

    """

    centers: Float[Array, "n 2"] = eqx.field(converter=_table)
    """Detection centers in image-plane pixels."""

    shape: Float[Array, "n _"] = eqx.field(converter=_table)
    color: Float[Array, "n _"] = eqx.field(converter=_table)
    material: Float[Array, "n _"] = eqx.field(converter=_table)
    size: Float[Array, "n _"] = eqx.field(converter=_table)
    texture: Float[Array, "n _"] | None = eqx.field(converter=_maybe_table)
    """Present only when the source scene is textured."""

    part_owner: Int[Array, "m"] = eqx.field(converter=lambda x: jnp.asarray(x, dtype=int))
    """Detection index owning each part."""

    part_color: Float[Array, "m _"] = eqx.field(converter=_table)
    part_material: Float[Array, "m _"] = eqx.field(converter=_table)
    part_texture: Float[Array, "m _"] | None = eqx.field(converter=_maybe_table)

    part_names: tuple[str, ...] = eqx.field(static=True, converter=tuple)
    gt_ids: tuple[int, ...] = eqx.field(static=True, converter=tuple)
    """Ground-truth object id per detection, ``-1`` for spurious ones."""

    scene_id: int = eqx.field(default=0, static=True)
    pixels_per_unit: float = eqx.field(
        default=DEFAULT_PIXELS_PER_UNIT, static=True, converter=float
    )

    def __check_init__(self) -> None:
        n, m = self.centers.shape[0], self.part_owner.shape[0]
        if len(self.gt_ids) != n or len(self.part_names) != m:
            msg = "ground-truth links and part names must match the detections"
            raise InvalidParameterError(msg)
        if self.pixels_per_unit <= 0:
            msg = "pixels_per_unit must be positive"
            raise InvalidParameterError(msg)
        if (self.texture is None) != (self.part_texture is None):
            msg = "object and part texture tables must be given together"
            raise InvalidParameterError(msg)

        owner = np.asarray(self.part_owner)
        if m and (owner.min() < 0 or owner.max() >= n):
            msg = "part owners must index detections"
            raise InvalidParameterError(msg)

        for name in (*OBJECT_AXES, *(f"part_{a}" for a in PART_AXES)):
            table = getattr(self, name)
            if table is None:
                continue
            rows = m if name.startswith("part_") else n
            t = np.asarray(table)
            if t.ndim != 2 or t.shape[0] != rows:
                msg = f"{name} table must have one row per detection"
                raise InvalidParameterError(msg)
            if (t < 0).any() or (np.abs(t.sum(axis=1) - 1) > _TOL).any():
                msg = f"{name} rows must be distributions"
                raise InvalidParameterError(msg)

    @property
    def n(self) -> int:
        """Number of detections."""
        return int(self.centers.shape[0])

    @property
    def m(self) -> int:
        """Number of detected parts."""
        return int(self.part_owner.shape[0])

    def table(self, axis: str, /) -> Float[Array, "n _"] | None:
        if axis not in OBJECT_AXES:
            msg = f"detections have no {axis!r} table"
            raise InvalidLiteralError(msg)
        return getattr(self, axis)

    def part_table(self, axis: str, /) -> Float[Array, "m _"] | None:
        if axis not in PART_AXES:
            msg = f"parts have no {axis!r} table"
            raise InvalidLiteralError(msg)
        return getattr(self, f"part_{axis}")
