"""Test :mod:`clevrshift.programs._src.core` and the signature table."""

import pytest

import clevrshift.programs as cp
from clevrshift.errors import ProgramParseError, ProgramTypeError
from clevrshift.programs import Operation, ValueType

from .._scenes import chain


class TestSignatures:
    """Test :data:`clevrshift.programs.SIGNATURES`."""

    @pytest.mark.parametrize("axis", cp.FILTER_AXES)
    def test_filters(self, axis: str) -> None:
        sig = cp.resolve_signature(f"filter_{axis}", [ValueType.OBJECT_SET])
        assert sig.output is ValueType.OBJECT_SET
        assert sig.literal == axis

    @pytest.mark.parametrize("axis", ["color", "material"])
    def test_part_overloads(self, axis: str) -> None:
        f = cp.resolve_signature(f"filter_{axis}", [ValueType.PART_SET])
        assert f.output is ValueType.PART_SET
        q = cp.resolve_signature(f"query_{axis}", [ValueType.PART])
        assert q.output is ValueType(axis)

    def test_object_to_part_accepts_sets(self) -> None:
        for t in (ValueType.OBJECT, ValueType.OBJECT_SET):
            assert cp.resolve_signature("object_to_part", [t]).output is ValueType.PART_SET

    def test_no_same_texture(self) -> None:
        assert "same_texture" not in cp.SIGNATURES
        assert "query_texture" in cp.SIGNATURES

    def test_relate_literal(self) -> None:
        assert cp.SIGNATURES["relate"][0].literal == "relation"

    def test_unknown(self) -> None:
        with pytest.raises(ProgramParseError, match="unknown function"):
            cp.resolve_signature("filter_weight", [ValueType.OBJECT_SET])

    def test_arity(self) -> None:
        with pytest.raises(ProgramParseError, match="takes 2 inputs"):
            cp.resolve_signature("union", [ValueType.OBJECT_SET])

    def test_answer_types(self) -> None:
        assert ValueType.INTEGER in cp.ANSWER_TYPES
        assert ValueType.OBJECT not in cp.ANSWER_TYPES
        assert ValueType.COLOR.is_attribute
        assert not ValueType.BOOLEAN.is_attribute


class TestTypecheck:
    def test_query(self) -> None:
        prog = chain(("scene",), ("filter_shape", "sedan"), ("unique",), ("query_color",))
        assert prog.types == (
            ValueType.OBJECT_SET,
            ValueType.OBJECT_SET,
            ValueType.OBJECT,
            ValueType.COLOR,
        )
        assert prog.sink == 3
        assert prog.answer_type is ValueType.COLOR

    def test_compare(self) -> None:
        ops = [
            Operation("scene"),
            Operation("filter_color", [0], ["red"]),
            Operation("count", [1]),
            Operation("scene"),
            Operation("filter_color", [3], ["blue"]),
            Operation("count", [4]),
            Operation("greater_than", [2, 5]),
        ]
        prog = cp.Program.from_ops(ops)
        assert prog.answer_type is ValueType.BOOLEAN
        assert prog.consumers() == ((1,), (2,), (6,), (4,), (5,), (6,), ())

    def test_equal_requires_same_axis(self) -> None:
        ops = [
            Operation("scene"), Operation("unique", [0]), Operation("query_color", [1]),
            Operation("scene"), Operation("unique", [3]), Operation("query_size", [4]),
            Operation("equal_color", [2, 5]),
        ]  # fmt: skip
        with pytest.raises(ProgramTypeError) as exc:
            cp.typecheck(ops)
        assert exc.value.index == 6

    def test_empty(self) -> None:
        with pytest.raises(ProgramTypeError, match="at least one operation"):
            cp.typecheck([])

    def test_non_answer_sink(self) -> None:
        with pytest.raises(ProgramTypeError, match="final result"):
            cp.typecheck([Operation("scene"), Operation("unique", [0])])

    def test_literal_arity(self) -> None:
        with pytest.raises(ProgramParseError, match="value inputs"):
            cp.typecheck([Operation("scene"), Operation("filter_color", [0]), Operation("count", [1])])

    def test_forward_reference(self) -> None:
        with pytest.raises(ProgramParseError) as exc:
            cp.typecheck([Operation("scene"), Operation("count", [1])])
        assert exc.value.index == 1

    def test_part_chain(self) -> None:
        prog = chain(
            ("scene",), ("filter_shape", "school bus"), ("unique",), ("object_to_part",),
            ("filter_part_name", "door"), ("unique",), ("query_color",),
        )  # fmt: skip
        assert prog.types[3] is ValueType.PART_SET
        assert prog.types[5] is ValueType.PART


class TestOperation:
    def test_value(self) -> None:
        assert Operation("filter_color", [0], ["red"]).value == "red"
        assert Operation("scene").value is None

    def test_converters(self) -> None:
        op = Operation("relate", (2,), ("left",))
        assert op.inputs == (2,)
        assert op.value_inputs == ("left",)
