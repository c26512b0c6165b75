"""Datasets shared by the functional tests."""

from functools import cache

from clevrshift.questions import (
    QuestionRecord,
    default_templates,
    generate_for_scene,
    number_questions,
)
from clevrshift.scenes import GenConfig, Scene, sample_scene
from clevrshift.utils import RandomStream, derive_key

SEED = 0


@cache
def dataset(
    n_scenes: int, redundancy: str = "rd", visual: str = "mid"
) -> tuple[dict[int, Scene], list[QuestionRecord]]:
    """``n_scenes`` scenes with 10 object and 10 part questions each."""
    cfg = GenConfig.from_variants(visual, seed=SEED)
    templates = default_templates()
    scenes: dict[int, Scene] = {}
    questions: list[QuestionRecord] = []
    for sid in range(n_scenes):
        scene = scenes[sid] = sample_scene(cfg, sid)
        questions += generate_for_scene(
            scene,
            templates,
            rng=RandomStream(derive_key(SEED, 0, sid, 4)),
            redundancy=redundancy,
        )
    return scenes, number_questions(questions)


FAST = 25
FULL = 1000
