"""Scene sampling under a generation configuration."""

__all__ = [
    "GenConfig",
    "PlacementConfig",
    "sample_scene",
    "VISUAL_VARIANTS",
    "PARTS_PERTURBED",
]

import logging
from typing import Any, Final, final

import equinox as eqx
import jax.random as jr
import numpy as np
from jaxtyping import PRNGKeyArray

from .core import ObjectInstance, PartInstance, Provenance, Scene
from .validate import DEFAULT_MARGIN, N_OBJECTS_RANGE
from clevrshift.concepts import (
    CoDistributionMatrix,
    ConceptDistribution,
    ConceptVocabulary,
    co_matrix as make_co_matrix,
    default_vocabulary,
    sample_concept,
    sample_rows,
    variant_distribution,
)
from clevrshift.errors import (
    ConfigConflictError,
    InvalidParameterError,
    PlacementExhaustedError,
)
from clevrshift.utils import derive_key, digest

logger = logging.getLogger(__name__)

VISUAL_VARIANTS: Final = ("easy", "mid", "hard")
PARTS_PERTURBED: Final = 3

# Purpose tags folded into a scene key; layout is shared across variants.
_LAYOUT, _CONCEPTS, _PARTS, _TEXTURES = 0, 1, 2, 3


@final
class PlacementConfig(eqx.Module):  # type: ignore[misc]
    """Rejection-sampling parameters for object placement."""

    margin: float = eqx.field(default=DEFAULT_MARGIN, converter=float)
    """Minimum gap between two footprints, in scene units."""

    plane_size: float = eqx.field(default=10.0, converter=float)
    """Side of the square ground plane; centers lie in ``[-s/2, s/2]²``."""

    max_retries: int = eqx.field(default=200, converter=int)
    """Candidate positions tried per object."""

    min_gap: float = eqx.field(default=1e-3, converter=float)
    """Minimum coordinate difference on each axis between two centers."""

    max_layout_attempts: int = eqx.field(default=25, converter=int)
    """Fresh restarts of the whole layout before giving up."""

    def __check_init__(self) -> None:
        if self.margin < 0 or self.plane_size <= 0 or self.min_gap <= 0:
            msg = "placement margin must be >= 0, plane size and gap > 0"
            raise InvalidParameterError(msg)
        if self.max_retries < 1 or self.max_layout_attempts < 1:
            msg = "placement retry budgets must be positive"
            raise InvalidParameterError(msg)


@final
class GenConfig(eqx.Module):  # type: ignore[misc]
    """Everything that determines a generated scene besides its id.

    Examples
    --------
    >>> from clevrshift.scenes import GenConfig
    >>> cfg = GenConfig.from_variants("easy", "long", seed=3)
    >>> cfg.parts_perturbed, cfg.textured
    (0, False)
    >>> GenConfig.from_variants("mid", "long", "co-1")
    Traceback (most recent call last):
    ...
    clevrshift.errors.ConfigConflictError: ...

    """

    shape_dist: ConceptDistribution
    color_dist: ConceptDistribution
    material_dist: ConceptDistribution

    visual: str = eqx.field(default="mid", static=True)
    """One of ``easy``, ``mid``, ``hard``."""

    co_matrix: CoDistributionMatrix | None = None
    """Color-given-shape matrix; overrides ``color_dist`` when present."""

    n_objects_range: tuple[int, int] = eqx.field(
        default=N_OBJECTS_RANGE, converter=lambda x: (int(x[0]), int(x[1]))
    )
    placement: PlacementConfig = eqx.field(default_factory=PlacementConfig)
    seed: int = eqx.field(default=0, converter=int)
    vocab: ConceptVocabulary = eqx.field(default_factory=default_vocabulary)

    def __check_init__(self) -> None:
        if self.visual not in VISUAL_VARIANTS:
            msg = f"visual must be one of {VISUAL_VARIANTS}, got {self.visual!r}"
            raise InvalidParameterError(msg)
        for dist, axis in (
            (self.shape_dist, "shape"),
            (self.color_dist, "color"),
            (self.material_dist, "material"),
        ):
            if dist.axis != axis or dist.size != len(self.vocab.values(axis)):
                msg = f"{axis} distribution does not match the {axis} vocabulary"
                raise InvalidParameterError(msg)
        if self.co_matrix is not None and self.co_matrix.rows.shape != (
            len(self.vocab.shapes),
            len(self.vocab.colors),
        ):
            msg = "co-distribution matrix must be shapes x colors"
            raise InvalidParameterError(msg)
        lo, hi = self.n_objects_range
        if not 1 <= lo <= hi:
            msg = f"invalid object count range {self.n_objects_range}"
            raise InvalidParameterError(msg)
        if not 0 <= self.seed < 2**64:
            msg = f"seed must be a 64-bit unsigned integer, got {self.seed}"
            raise InvalidParameterError(msg)

    @classmethod
    def from_variants(
        cls,
        visual: str = "mid",
        dist: str = "bal",
        comp: str | None = None,
        /,
        *,
        seed: int = 0,
        peak: float = 0.8,
        vocab: ConceptVocabulary | None = None,
        placement: PlacementConfig | None = None,
        n_objects_range: tuple[int, int] = N_OBJECTS_RANGE,
    ) -> "GenConfig":
        """Build the configuration of a named dataset variant.

        ``dist`` sets the shape, color and material distributions; ``comp``
        replaces color sampling by a co-distribution matrix, so it may only
        be combined with the balanced distribution.
        """
        vocab = default_vocabulary() if vocab is None else vocab
        if comp is not None and dist != "bal":
            msg = (
                f"--comp {comp} controls colors and cannot be combined with "
                f"--dist {dist}; use --dist bal"
            )
            raise ConfigConflictError(msg)
        return cls(
            shape_dist=variant_distribution(dist, "shape", vocab),
            color_dist=variant_distribution(dist, "color", vocab),
            material_dist=variant_distribution(dist, "material", vocab),
            visual=visual,
            co_matrix=None if comp is None else make_co_matrix(comp, vocab, peak=peak),
            n_objects_range=n_objects_range,
            placement=PlacementConfig() if placement is None else placement,
            seed=seed,
            vocab=vocab,
        )

    @property
    def parts_perturbed(self) -> int:
        """Parts per object whose attributes are re-sampled."""
        return 0 if self.visual == "easy" else PARTS_PERTURBED

    @property
    def textured(self) -> bool:
        """Whether textures are sampled."""
        return self.visual == "hard"

    def to_dict(self) -> dict[str, Any]:
        """Return a JSON-serializable description of the configuration."""
        p = self.placement
        return {
            "visual": self.visual,
            "shape_weights": np.asarray(self.shape_dist.weights).tolist(),
            "color_weights": np.asarray(self.color_dist.weights).tolist(),
            "material_weights": np.asarray(self.material_dist.weights).tolist(),
            "co_matrix": None
            if self.co_matrix is None
            else np.asarray(self.co_matrix.rows).tolist(),
            "n_objects_range": list(self.n_objects_range),
            "placement": {
                "margin": p.margin,
                "plane_size": p.plane_size,
                "max_retries": p.max_retries,
                "min_gap": p.min_gap,
                "max_layout_attempts": p.max_layout_attempts,
            },
            "seed": self.seed,
            "shapes": list(self.vocab.shapes),
            "colors": list(self.vocab.colors),
        }

    def digest(self) -> str:
        """Short digest identifying the configuration."""
        return digest(self.to_dict())


# =============================================================================


def sample_scene(
    cfg: GenConfig, scene_id: int, /, *, split: int = 0, config_digest: str | None = None
) -> Scene:
    """Sample one valid scene, deterministically in ``(cfg, split, scene_id)``.

    The scene key is split by purpose: layout (count, sizes, positions,
    rotations), concepts (shapes, colors, materials), part perturbation and
    textures. Variants that share a seed therefore share their layout and
    body attributes, and differ only in parts and textures.

    Examples
    --------
    >>> from clevrshift.scenes import GenConfig, sample_scene, validate_scene
    >>> cfg = GenConfig.from_variants("mid", seed=0)
    >>> scene = sample_scene(cfg, 0)
    >>> validate_scene(scene)
    []
    >>> scene == sample_scene(cfg, 0)
    True

    """
    vocab = cfg.vocab
    key = derive_key(cfg.seed, split, scene_id)

    sizes, positions, rotations = _sample_layout(cfg, jr.fold_in(key, _LAYOUT))
    n = len(sizes)

    k_shape, k_color, k_material = jr.split(jr.fold_in(key, _CONCEPTS), 3)
    shapes = np.asarray(sample_concept(cfg.shape_dist, k_shape, (n,))).tolist()
    if cfg.co_matrix is not None:
        colors = np.asarray(sample_rows(cfg.co_matrix.rows[np.asarray(shapes)], k_color))
    else:
        colors = np.asarray(sample_concept(cfg.color_dist, k_color, (n,)))
    materials = np.asarray(sample_concept(cfg.material_dist, k_material, (n,)))

    body = [
        (vocab.shapes[s], vocab.colors[c], vocab.materials[m])
        for s, c, m in zip(shapes, colors.tolist(), materials.tolist(), strict=True)
    ]
    parts, textures = _sample_parts(
        cfg, body, jr.fold_in(key, _PARTS), jr.fold_in(key, _TEXTURES)
    )

    objects = [
        ObjectInstance(
            id=i,
            shape=shape,
            category=vocab.shape_to_category[shape],
            size=sizes[i],
            color=color,
            material=material,
            position=positions[i],
            rotation=rotations[i],
            radius=vocab.radius(sizes[i]),
            parts=parts[i],
            texture=textures[i],
        )
        for i, (shape, color, material) in enumerate(body)
    ]
    provenance = Provenance(
        config_digest=cfg.digest() if config_digest is None else config_digest,
        seed=cfg.seed,
        split=split,
        visual=cfg.visual,
    )
    return Scene.from_objects(objects, scene_id=scene_id, provenance=provenance)


def _sample_layout(
    cfg: GenConfig, key: PRNGKeyArray
) -> tuple[list[str], list[tuple[float, float]], list[float]]:
    vocab, pc = cfg.vocab, cfg.placement
    lo, hi = cfg.n_objects_range
    k_n, k_size, k_rot, k_pos = jr.split(key, 4)

    n = int(jr.randint(k_n, (), lo, hi + 1))
    sizes = [vocab.sizes[i] for i in np.asarray(jr.randint(k_size, (n,), 0, len(vocab.sizes))).tolist()]
    rotations = np.asarray(jr.uniform(k_rot, (n,), maxval=360.0)).tolist()
    radii = np.array([vocab.radius(s) for s in sizes])

    half = pc.plane_size / 2
    for attempt in range(pc.max_layout_attempts):
        candidates = np.asarray(
            jr.uniform(
                jr.fold_in(k_pos, attempt),
                (n, pc.max_retries, 2),
                minval=-half,
                maxval=half,
            )
        )
        placed = _place(candidates, radii, pc.margin, pc.min_gap)
        if placed is not None:
            return sizes, placed, rotations
        logger.debug("layout attempt %d for %d objects got stuck; restarting", attempt, n)

    msg = (
        f"could not place {n} objects after {pc.max_layout_attempts} layouts "
        f"of {pc.max_retries} retries per object"
    )
    raise PlacementExhaustedError(msg)


def _place(
    candidates: np.ndarray, radii: np.ndarray, margin: float, min_gap: float
) -> list[tuple[float, float]] | None:
    """Sequential rejection sampling: first admissible candidate per object."""
    placed = np.empty((0, 2))
    for i in range(candidates.shape[0]):
        c = candidates[i]
        if len(placed):
            delta = c[:, None, :] - placed[None, :, :]
            dist = np.sqrt((delta**2).sum(axis=-1))
            ok = (dist >= radii[i] + radii[: len(placed)] + margin).all(axis=1)
            ok &= (np.abs(delta) >= min_gap).all(axis=(1, 2))
            if not ok.any():
                return None
            c = c[int(np.argmax(ok))]
        else:
            c = c[0]
        placed = np.vstack([placed, c[None, :]])
    return [(float(x), float(y)) for x, y in placed]


def _sample_parts(
    cfg: GenConfig,
    body: list[tuple[str, str, str]],
    k_parts: PRNGKeyArray,
    k_textures: PRNGKeyArray,
) -> tuple[list[tuple[PartInstance, ...]], list[str | None]]:
    vocab = cfg.vocab
    n, P = len(body), cfg.parts_perturbed

    if P:
        width = max(len(v) for v in vocab.exterior_parts.values())
        k_order, k_color, k_material = jr.split(k_parts, 3)
        order = np.asarray(jr.uniform(k_order, (n, width)))
        new_color = np.asarray(jr.randint(k_color, (n, P), 0, len(vocab.colors)))
        new_material = np.asarray(jr.randint(k_material, (n, P), 0, len(vocab.materials)))
    if cfg.textured:
        k_obj, k_part = jr.split(k_textures)
        obj_tex = np.asarray(jr.randint(k_obj, (n,), 0, len(vocab.textures)))
        part_tex = np.asarray(jr.randint(k_part, (n, max(P, 1)), 0, len(vocab.textures)))

    all_parts: list[tuple[PartInstance, ...]] = []
    textures: list[str | None] = []
    for i, (shape, color, material) in enumerate(body):
        texture = vocab.textures[int(obj_tex[i])] if cfg.textured else None
        perturbed: dict[str, PartInstance] = {}
        if P:
            exterior = vocab.exterior_parts[shape]
            k = min(P, len(exterior))
            slots = np.argsort(order[i, : len(exterior)], kind="stable")[:k]
            for s, j in enumerate(slots.tolist()):
                name = exterior[j]
                perturbed[name] = PartInstance(
                    name=name,
                    color=vocab.colors[int(new_color[i, s])],
                    material=vocab.materials[int(new_material[i, s])],
                    texture=vocab.textures[int(part_tex[i, s])] if cfg.textured else None,
                )
        all_parts.append(
            tuple(
                perturbed.get(name, PartInstance(name, color, material, texture))
                for name in vocab.parts[shape]
            )
        )
        textures.append(texture)
    return all_parts, textures
