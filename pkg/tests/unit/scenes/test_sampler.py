"""Test :func:`clevrshift.scenes.sample_scene`."""

import pytest

from clevrshift.errors import (
    ConfigConflictError,
    InvalidParameterError,
    PlacementExhaustedError,
)
from clevrshift.scenes import GenConfig, PlacementConfig, sample_scene, validate_scene


class TestGenConfig:
    def test_variant_properties(self) -> None:
        assert GenConfig.from_variants("easy").parts_perturbed == 0
        assert GenConfig.from_variants("mid").parts_perturbed == 3
        assert not GenConfig.from_variants("mid").textured
        assert GenConfig.from_variants("hard").textured

    @pytest.mark.parametrize("dist", ["slt", "long", "head", "tail", "oppo"])
    def test_comp_requires_balanced(self, dist: str) -> None:
        with pytest.raises(ConfigConflictError, match="--dist bal"):
            GenConfig.from_variants("mid", dist, "co-0")

    def test_unknown_visual(self) -> None:
        with pytest.raises(InvalidParameterError, match="visual"):
            GenConfig.from_variants("blurry")

    def test_seed_range(self) -> None:
        with pytest.raises(InvalidParameterError, match="seed"):
            GenConfig.from_variants(seed=2**64)

    def test_digest(self) -> None:
        a = GenConfig.from_variants("mid", "long", seed=1)
        assert a.digest() == GenConfig.from_variants("mid", "long", seed=1).digest()
        assert a.digest() != GenConfig.from_variants("mid", "long", seed=2).digest()
        assert a.digest() != GenConfig.from_variants("mid", "bal", seed=1).digest()

    def test_placement_budgets(self) -> None:
        with pytest.raises(InvalidParameterError):
            PlacementConfig(max_retries=0)


class TestSampleScene:
    @pytest.mark.parametrize("visual", ["easy", "mid", "hard"])
    @pytest.mark.parametrize("scene_id", range(5))
    def test_valid(self, visual: str, scene_id: int) -> None:
        cfg = GenConfig.from_variants(visual, seed=11)
        scene = sample_scene(cfg, scene_id)
        assert validate_scene(scene) == []
        assert scene.scene_id == scene_id
        assert scene.provenance.config_digest == cfg.digest()

    def test_deterministic(self) -> None:
        cfg = GenConfig.from_variants("hard", seed=5)
        assert sample_scene(cfg, 3) == sample_scene(cfg, 3)
        assert sample_scene(cfg, 3) != sample_scene(cfg, 4)

    def test_split_changes_scene(self) -> None:
        cfg = GenConfig.from_variants(seed=5)
        a, b = sample_scene(cfg, 0, split=0), sample_scene(cfg, 0, split=2)
        assert [o.position for o in a.objects] != [o.position for o in b.objects]

    def test_easy_parts_follow_body(self) -> None:
        scene = sample_scene(GenConfig.from_variants("easy", seed=2), 0)
        for o in scene.objects:
            assert o.texture is None
            assert all((p.color, p.material) == (o.color, o.material) for p in o.parts)

    def test_variants_share_layout_and_body(self) -> None:
        scenes = [sample_scene(GenConfig.from_variants(v, seed=9), 1) for v in ("easy", "mid", "hard")]
        bodies = [[(o.position, o.size, o.shape, o.color) for o in s.objects] for s in scenes]
        assert bodies[0] == bodies[1] == bodies[2]

    def test_mid_perturbs_at_most_three_parts(self) -> None:
        easy = sample_scene(GenConfig.from_variants("easy", seed=4), 0)
        mid = sample_scene(GenConfig.from_variants("mid", seed=4), 0)
        for e, m in zip(easy.objects, mid.objects, strict=True):
            assert [p.name for p in e.parts] == [p.name for p in m.parts]
            changed = sum(pe != pm for pe, pm in zip(e.parts, m.parts, strict=True))
            assert changed <= 3

    def test_hard_is_textured(self) -> None:
        scene = sample_scene(GenConfig.from_variants("hard", seed=4), 0)
        assert all(o.texture is not None for o in scene.objects)
        assert all(p.texture is not None for o in scene.objects for p in o.parts)

    def test_object_count_range(self) -> None:
        cfg = GenConfig.from_variants(seed=0, n_objects_range=(4, 4))
        assert all(len(sample_scene(cfg, i)) == 4 for i in range(3))

    def test_all_parts_present(self) -> None:
        cfg = GenConfig.from_variants(seed=1)
        for o in sample_scene(cfg, 0).objects:
            assert tuple(p.name for p in o.parts) == cfg.vocab.parts[o.shape]

    def test_full_peak_fixes_colors(self) -> None:
        cfg = GenConfig.from_variants("mid", "bal", "co-2", seed=3, peak=1.0)
        vocab, assigned = cfg.vocab, cfg.co_matrix.assigned_colors()
        for sid in range(4):
            for o in sample_scene(cfg, sid).objects:
                assert o.color == vocab.colors[assigned[vocab.index("shape", o.shape)]]
                assert o.color == vocab.colors[vocab.categories.index(o.category)]

    def test_placement_exhausted(self) -> None:
        cramped = PlacementConfig(plane_size=2.0, max_retries=5, max_layout_attempts=2)
        cfg = GenConfig.from_variants(seed=0, placement=cramped, n_objects_range=(10, 10))
        with pytest.raises(PlacementExhaustedError):
            sample_scene(cfg, 0)
