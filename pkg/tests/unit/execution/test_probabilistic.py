"""Test :mod:`clevrshift.execution._src.probabilistic`."""

import jax.numpy as jnp
import numpy as np
import pytest

import clevrshift.execution as ce
from clevrshift.errors import (
    EmptySelectionError,
    InvalidLiteralError,
    InvalidParameterError,
    LengthMismatchError,
    MissingTextureError,
)
from clevrshift.perception import PerceivedScene, one_hot
from clevrshift.programs import Answer, Operation, Program

from .._scenes import chain, street_scene


def pscene(centers: list[list[float]], color: list[list[float]]) -> PerceivedScene:
    """Detections with arbitrary color tables and uniform everything else."""
    n = len(centers)

    def uniform(k: int) -> np.ndarray:
        return np.full((n, k), 1 / k)

    return PerceivedScene(
        centers=centers,
        shape=uniform(21),
        color=color,
        material=uniform(2),
        size=uniform(2),
        texture=None,
        part_owner=[],
        part_color=np.zeros((0, 8)),
        part_material=np.zeros((0, 2)),
        part_texture=None,
        part_names=(),
        gt_ids=range(n),
    )


class TestProbExecConfig:
    def test_defaults(self) -> None:
        cfg = ce.ProbExecConfig()
        assert (cfg.a, cfg.b, cfg.select_threshold) == (20.0, 0.02, 0.7)
        assert cfg.strict
        assert cfg.to_dict()["query_rule"] == "joint-argmax"

    @pytest.mark.parametrize(
        "kwargs",
        [{"b": 0.0}, {"select_threshold": 1.0}, {"relation_mode": "fuzzy"}, {"query_rule": "vote"}],
    )
    def test_invalid(self, kwargs: dict) -> None:
        with pytest.raises(InvalidParameterError):
            ce.ProbExecConfig(**kwargs)


class TestOperations:
    def test_scene(self) -> None:
        ps = pscene([[0.0, 0.0], [1.0, 1.0]], np.full((2, 8), 1 / 8))
        assert ce.op_scene(ps).tolist() == [1.0, 1.0]

    def test_relate_at_zero_offset(self) -> None:
        # sigmoid(b * a) = sigmoid(0.4)
        ps = pscene([[0.0, 0.0], [0.0, 30.0]], np.full((2, 8), 1 / 8))
        p = ce.op_relate(0, ps, "right")
        assert p[0] == 0.0
        assert p[1] == pytest.approx(0.598688, abs=1e-6)

    def test_relate_directions(self) -> None:
        ps = pscene([[0.0, 0.0], [-100.0, 200.0]], np.full((2, 8), 1 / 8))
        assert ce.op_relate(0, ps, "left")[1] > ce.op_relate(0, ps, "right")[1]
        assert ce.op_relate(0, ps, "front")[1] > ce.op_relate(0, ps, "behind")[1]

    def test_relate_hard(self) -> None:
        ps = pscene([[0.0, 0.0], [5.0, -5.0], [-5.0, 5.0]], np.full((3, 8), 1 / 8))
        cfg = ce.ProbExecConfig(relation_mode="hard")
        assert ce.op_relate(0, ps, "right", cfg).tolist() == [0.0, 1.0, 0.0]

    def test_relate_unknown(self) -> None:
        ps = pscene([[0.0, 0.0]], np.full((1, 8), 1 / 8))
        with pytest.raises(InvalidLiteralError):
            ce.op_relate(0, ps, "above")

    def test_filter(self) -> None:
        color = np.zeros((2, 8))
        color[0, :2] = [0.9, 0.1]
        color[1, :2] = [0.3, 0.7]
        ps = pscene([[0.0, 0.0], [1.0, 1.0]], color)
        p = ce.op_filter(jnp.array([1.0, 0.5]), ps, "color", "red")
        np.testing.assert_allclose(p, [0.1, 0.35])

    def test_filter_category(self) -> None:
        ps = one_hot(street_scene())
        p = ce.op_filter(ce.op_scene(ps), ps, "category", "car")
        assert p.tolist() == [0.0, 1.0, 1.0, 0.0]

    def test_filter_texture_without_tables(self) -> None:
        ps = one_hot(street_scene())
        assert ce.op_filter(ce.op_scene(ps), ps, "texture", "striped").tolist() == [0.0] * 4

    def test_same_cosine(self) -> None:
        color = np.zeros((2, 8))
        color[0, :2] = [0.5, 0.5]
        color[1, [0, 2]] = [0.5, 0.5]
        ps = pscene([[0.0, 0.0], [1.0, 1.0]], color)
        p = ce.op_same(0, ps, "color")
        assert p[0] == 0.0
        assert p[1] == pytest.approx(0.5)

    def test_union_intersect(self) -> None:
        half = jnp.array([0.5])
        assert ce.op_union(half, half).tolist() == [0.75]
        assert ce.op_intersect(half, half).tolist() == [0.25]

    def test_length_mismatch(self) -> None:
        with pytest.raises(LengthMismatchError):
            ce.op_union(jnp.ones(2), jnp.ones(3))

    def test_count_threshold_is_strict(self) -> None:
        p = jnp.array([0.7, 0.7000001, 0.2])
        assert ce.op_count(p) == 1
        assert ce.op_count(p, ce.ProbExecConfig(strict=False)) == 2
        assert not ce.op_exist(jnp.array([0.7]))

    def test_unique_empty(self) -> None:
        with pytest.raises(EmptySelectionError):
            ce.op_unique_select(jnp.zeros(0))

    def test_query_rules(self) -> None:
        table = jnp.array([[0.9, 0.1], [0.2, 0.8], [0.2, 0.8]])
        p = jnp.ones(3)
        assert ce.op_query(p, table, ["red", "blue"]) == "red"
        cfg = ce.ProbExecConfig(query_rule="expected-sum")
        assert ce.op_query(p, table, ["red", "blue"], cfg) == "blue"

    def test_query_joint_argmax(self) -> None:
        table = jnp.array([[0.6, 0.4], [0.1, 0.9]])
        assert ce.op_query(jnp.array([0.9, 0.8]), table, ["red", "blue"]) == "blue"

    def test_query_missing_table(self) -> None:
        with pytest.raises(MissingTextureError):
            ce.op_query(jnp.ones(1), None, ["striped"])


# =============================================================================


PROGRAMS = {
    "count": chain(("scene",), ("filter_color", "red"), ("count",)),
    "query": chain(
        ("scene",), ("filter_size", "small"), ("filter_shape", "sedan"), ("unique",),
        ("query_color",),
    ),
    "relate": chain(
        ("scene",), ("filter_color", "blue"), ("unique",), ("relate", "right"), ("count",)
    ),
    "behind": chain(
        ("scene",), ("filter_shape", "sedan"), ("filter_size", "large"), ("unique",),
        ("relate", "behind"), ("unique",), ("query_shape",),
    ),
    "same": chain(
        ("scene",), ("filter_shape", "school bus"), ("unique",), ("same_color",), ("count",)
    ),
    "exist": chain(("scene",), ("filter_category", "airplane"), ("exist",)),
    "part": chain(
        ("scene",), ("filter_shape", "school bus"), ("unique",), ("object_to_part",),
        ("filter_part_name", "door"), ("unique",), ("query_color",),
    ),
    "part_to_object": chain(
        ("scene",), ("object_to_part",), ("filter_part_name", "hood"),
        ("filter_material", "metal"), ("part_to_object",), ("count",),
    ),
    "compare": Program.from_ops([
        Operation("scene"), Operation("filter_color", [0], ["red"]), Operation("count", [1]),
        Operation("scene"), Operation("filter_size", [3], ["small"]), Operation("count", [4]),
        Operation("equal_integer", [2, 5]),
    ]),
}  # fmt: skip


class TestExecuteProb:
    @pytest.mark.parametrize("name", PROGRAMS)
    def test_one_hot_matches_deterministic(self, name: str) -> None:
        scene = street_scene()
        prog = PROGRAMS[name]
        assert ce.execute_prob(prog, one_hot(scene)) == ce.execute(prog, scene)

    def test_unique_keeps_selection(self) -> None:
        scene = street_scene()
        trace = ce.execute_prob_trace(PROGRAMS["query"], one_hot(scene))
        anchor = trace[3]
        assert isinstance(anchor, ce.ProbObject)
        assert (anchor.index, anchor.confidence) == (1, 1.0)

    @pytest.mark.parametrize("rule", ce.QUERY_RULES)
    def test_query_reads_the_anchor(self, rule: str) -> None:
        # both detections tie for ``unique``; the second is more surely blue
        color = np.zeros((2, 8))
        color[0, [1, 2]] = [0.6, 0.4]
        color[1, [0, 2]] = [0.1, 0.9]
        ps = pscene([[0.0, 0.0], [50.0, 0.0]], color)
        prog = chain(("scene",), ("unique",), ("query_color",))
        cfg = ce.ProbExecConfig(query_rule=rule)
        assert ce.execute_prob(prog, ps, cfg) == Answer.from_value("red")

    def test_tied_sedans(self) -> None:
        prog = chain(("scene",), ("filter_shape", "sedan"), ("unique",), ("query_color",))
        assert ce.execute_prob(prog, one_hot(street_scene())) == Answer.from_value("blue")

    def test_no_detections(self) -> None:
        ps = pscene(np.zeros((0, 2)), np.zeros((0, 8)))
        assert ce.execute_prob(PROGRAMS["count"], ps) == Answer.from_value(0)
        with pytest.raises(EmptySelectionError):
            ce.execute_prob(PROGRAMS["query"], ps)
