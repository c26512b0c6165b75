"""Simulated scene parsing under a parameterized noise model.

Each likelihood table of a surviving object is

    P(v) = (1 - eps) * q(v) + eps / K

where ``q`` is the one-hot truth, or, when the table is *confused*, a split of
``beta`` on one wrong label and ``1 - beta`` on the truth. Confusion and the
wrong label are decided by uniforms drawn independently of the noise levels,
so raising ``eps`` (or ``confusion``) never repairs a table. With the default
``confusion=0`` every table is plain label smoothing of the truth.
"""

__all__ = ["NoiseConfig", "perceive", "one_hot"]

import logging
from typing import Any, Final, final

import equinox as eqx
import jax.random as jr
import numpy as np
from jaxtyping import PRNGKeyArray

from .core import DEFAULT_PIXELS_PER_UNIT, PerceivedScene
from clevrshift.concepts import ConceptVocabulary, default_vocabulary
from clevrshift.errors import InvalidParameterError
from clevrshift.scenes import Scene
from clevrshift.utils import derive_key

logger = logging.getLogger(__name__)

# Table slots per object: shape, color, material, size, texture, then three
# per part (color, material, texture).
_N_OBJECT_SLOTS: Final = 5
_N_PART_SLOTS: Final = 3


@final
class NoiseConfig(eqx.Module):  # type: ignore[misc]
    """Noise parameters of simulated perception.

    Examples
    --------
    >>> from clevrshift.perception import NoiseConfig
    >>> NoiseConfig(epsilon=0.2).confusion
    0.0
    >>> NoiseConfig(epsilon=1.0)
    Traceback (most recent call last):
    ...
    clevrshift.errors.InvalidParameterError: epsilon must be in [0, 1), got 1.0

    """

    epsilon: float = eqx.field(default=0.0, converter=float)
    """Label-smoothing mass mixed toward uniform in every table."""

    position_sigma: float = eqx.field(default=0.0, converter=float)
    """Standard deviation of center jitter, in scene units."""

    miss_rate: float = eqx.field(default=0.0, converter=float)
    spurious_rate: float = eqx.field(default=0.0, converter=float)
    """Expected number of spurious detections per scene."""

    confusion: float = eqx.field(default=0.0, converter=float)
    """Per-table confusion probability."""

    confusion_share: float = eqx.field(default=0.6, converter=float)
    """Share of the non-smoothed mass moved to the wrong label."""

    pixels_per_unit: float = eqx.field(default=DEFAULT_PIXELS_PER_UNIT, converter=float)
    plane_size: float = eqx.field(default=10.0, converter=float)
    seed: int = eqx.field(default=0, converter=int)

    def __check_init__(self) -> None:
        if not 0 <= self.epsilon < 1:
            msg = f"epsilon must be in [0, 1), got {self.epsilon}"
            raise InvalidParameterError(msg)
        if self.position_sigma < 0 or self.spurious_rate < 0:
            msg = "position_sigma and spurious_rate must be non-negative"
            raise InvalidParameterError(msg)
        for name in ("miss_rate", "confusion", "confusion_share"):
            if not 0 <= getattr(self, name) <= 1:
                msg = f"{name} must be in [0, 1], got {getattr(self, name)}"
                raise InvalidParameterError(msg)
        if self.pixels_per_unit <= 0 or self.plane_size <= 0:
            msg = "pixels_per_unit and plane_size must be positive"
            raise InvalidParameterError(msg)
        if not 0 <= self.seed < 2**64:
            msg = f"seed must be a 64-bit unsigned integer, got {self.seed}"
            raise InvalidParameterError(msg)

    def to_dict(self) -> dict[str, Any]:
        return {
            "epsilon": self.epsilon,
            "position_sigma": self.position_sigma,
            "miss_rate": self.miss_rate,
            "spurious_rate": self.spurious_rate,
            "confusion": self.confusion,
            "confusion_share": self.confusion_share,
            "pixels_per_unit": self.pixels_per_unit,
            "plane_size": self.plane_size,
            "seed": self.seed,
        }


# =============================================================================


def _row(
    truth: int, K: int, u_confuse: float, u_wrong: float, noise: NoiseConfig
) -> np.ndarray:
    q = np.zeros(K)
    q[truth] = 1.0
    if K > 1 and u_confuse < noise.confusion:
        wrong = (truth + 1 + min(int(u_wrong * (K - 1)), K - 2)) % K
        q[truth] = 1 - noise.confusion_share
        q[wrong] = noise.confusion_share
    return (1 - noise.epsilon) * q + noise.epsilon / K


def perceive(
    scene: Scene,
    noise: NoiseConfig | None = None,
    key: PRNGKeyArray | None = None,
    /,
    *,
    vocab: ConceptVocabulary | None = None,
) -> PerceivedScene:
    """Simulate parsing ``scene``.

    Parameters
    ----------
    scene : Scene
        The ground truth.
    noise : NoiseConfig, optional
        Defaults to no noise at all.
    key : PRNGKeyArray, optional
        Defaults to a key derived from ``noise.seed`` and the scene id, so
        the same scene sees the same draws at every noise level.
    vocab : ConceptVocabulary, optional
        Fixes the table layouts.

    Examples
    --------
    >>> from clevrshift.perception import NoiseConfig, perceive
    >>> from clevrshift.scenes import GenConfig, sample_scene
    >>> scene = sample_scene(GenConfig.from_variants("easy"), 1)
    >>> ps = perceive(scene, NoiseConfig(epsilon=0.1))
    >>> sorted({round(float(v), 4) for v in ps.color[0]})
    [0.0125, 0.9125]

    >>> perceive(scene, NoiseConfig(miss_rate=1.0)).n
    0

    """
    noise = NoiseConfig() if noise is None else noise
    vocab = default_vocabulary() if vocab is None else vocab
    key = derive_key(noise.seed, scene.scene_id) if key is None else key
    k_miss, k_tables, k_pos, k_count, k_spurious = jr.split(key, 5)

    n = len(scene.objects)
    textured = n > 0 and all(o.texture is not None for o in scene.objects)
    max_parts = max(len(p) for p in vocab.parts.values())
    n_slots = _N_OBJECT_SLOTS + _N_PART_SLOTS * max_parts

    kept = np.asarray(jr.uniform(k_miss, (n,))) >= noise.miss_rate
    u = np.asarray(jr.uniform(k_tables, (n, n_slots, 2)))
    jitter = np.asarray(jr.normal(k_pos, (n, 2))) * noise.position_sigma

    axes = {a: vocab.values(a) for a in ("shape", "color", "material", "size", "texture")}
    rows: dict[str, list[np.ndarray]] = {a: [] for a in axes}
    part_rows: dict[str, list[np.ndarray]] = {a: [] for a in ("color", "material", "texture")}
    centers: list[np.ndarray] = []
    owners: list[int] = []
    names: list[str] = []
    gt_ids: list[int] = []

    for o in scene.objects:
        if not kept[o.id]:
            continue
        det = len(gt_ids)
        gt_ids.append(o.id)
        centers.append((np.asarray(o.position) + jitter[o.id]) * noise.pixels_per_unit)
        for s, (axis, values) in enumerate(axes.items()):
            if axis == "texture" and not textured:
                continue
            truth = values.index(o.attribute(axis))
            rows[axis].append(_row(truth, len(values), *u[o.id, s], noise))
        for j, p in enumerate(o.parts):
            owners.append(det)
            names.append(p.name)
            for s, axis in enumerate(part_rows):
                if axis == "texture" and not textured:
                    continue
                values = axes[axis]
                slot = _N_OBJECT_SLOTS + _N_PART_SLOTS * j + s
                part_rows[axis].append(
                    _row(values.index(p.attribute(axis)), len(values), *u[o.id, slot], noise)
                )

    n_spurious = int(jr.poisson(k_count, noise.spurious_rate)) if noise.spurious_rate else 0
    if n_spurious:
        half = noise.plane_size / 2
        pos = np.asarray(jr.uniform(k_spurious, (n_spurious, 2), minval=-half, maxval=half))
        for xy in pos:
            gt_ids.append(-1)
            centers.append(xy * noise.pixels_per_unit)
            for axis, values in axes.items():
                if axis != "texture" or textured:
                    rows[axis].append(np.full(len(values), 1 / len(values)))
    logger.debug(
        "scene %d: %d detections (%d missed, %d spurious)",
        scene.scene_id, len(gt_ids), n - int(kept.sum()), n_spurious,
    )

    def stack(r: list[np.ndarray], axis: str) -> np.ndarray:
        return np.stack(r) if r else np.zeros((0, len(axes[axis])))

    return PerceivedScene(
        centers=np.stack(centers) if centers else np.zeros((0, 2)),
        shape=stack(rows["shape"], "shape"),
        color=stack(rows["color"], "color"),
        material=stack(rows["material"], "material"),
        size=stack(rows["size"], "size"),
        texture=stack(rows["texture"], "texture") if textured else None,
        part_owner=np.asarray(owners, dtype=int),
        part_color=stack(part_rows["color"], "color"),
        part_material=stack(part_rows["material"], "material"),
        part_texture=stack(part_rows["texture"], "texture") if textured else None,
        part_names=names,
        gt_ids=gt_ids,
        scene_id=scene.scene_id,
        pixels_per_unit=noise.pixels_per_unit,
    )


def one_hot(
    scene: Scene,
    /,
    *,
    vocab: ConceptVocabulary | None = None,
    pixels_per_unit: float = DEFAULT_PIXELS_PER_UNIT,
) -> PerceivedScene:
    """The exact one-hot encoding of ``scene``."""
    return perceive(scene, NoiseConfig(pixels_per_unit=pixels_per_unit), vocab=vocab)
