"""Redundancy variants describe referents minimally or completely."""

import pytest

from ._data import FAST, dataset
from clevrshift.execution import ObjectValue, PartValue, execute, execute_trace
from clevrshift.questions import (
    chains,
    redundancy_audit,
    saturate_redundancy,
    strip_redundancy,
)
from clevrshift.utils import RandomStream, derive_key

N_SCENES = [FAST, pytest.param(500, marks=pytest.mark.slow)]


def described_axes(program, head: int) -> set[str]:
    chain = chains(program)[head]
    prefix = "part_" if chain.level == "part" else ""
    out = set()
    for f in chain.filters:
        axis = program.ops[f].function.removeprefix("filter_")
        out.add(axis if axis.startswith("part_") else prefix + axis)
    return out


def complete_axes(scene, value) -> set[str]:
    match value:
        case ObjectValue(id=i):
            axes = {"size", "color", "material", "shape"}
            if scene.objects[i].texture is not None:
                axes.add("texture")
        case PartValue():
            axes = {"part_name", "part_color", "part_material"}
    return axes


@pytest.mark.parametrize("n_scenes", N_SCENES)
def test_minimal_run_has_no_redundancy(n_scenes: int) -> None:
    scenes, questions = dataset(n_scenes, "rd-")
    flagged = [q for q in questions if redundancy_audit(q.program, scenes[q.scene_id])]
    assert flagged == []


@pytest.mark.parametrize("n_scenes", N_SCENES)
def test_saturated_run_is_complete(n_scenes: int) -> None:
    scenes, questions = dataset(n_scenes, "rd+")
    for q in questions:
        scene = scenes[q.scene_id]
        trace = execute_trace(q.program, scene)
        for u, op in enumerate(q.program.ops):
            if op.function != "unique":
                continue
            head = op.inputs[0]
            wanted = complete_axes(scene, trace[u])
            assert wanted <= described_axes(q.program, head), q.text


@pytest.mark.parametrize("n_scenes", N_SCENES)
def test_strip_after_saturate(n_scenes: int) -> None:
    scenes, questions = dataset(n_scenes, "rd")
    for q in questions[:1000]:
        scene = scenes[q.scene_id]
        rng = RandomStream(derive_key(1, q.question_index))
        stripped = strip_redundancy(saturate_redundancy(q.program, scene, rng), scene)
        assert redundancy_audit(stripped, scene) == []
        assert execute(stripped, scene) == q.answer
