"""Test :mod:`clevrshift.programs._src.parse`."""

import pytest

import clevrshift.programs as cp
from clevrshift.concepts import default_vocabulary
from clevrshift.errors import InvalidLiteralError, ProgramParseError

from .._scenes import chain


def rec(function: str, inputs: list, values: list | None = None) -> dict:
    return {"function": function, "inputs": inputs, "value_inputs": values or []}


class TestParseProgram:
    def test_round_trip(self) -> None:
        prog = chain(("scene",), ("filter_color", "red"), ("unique",), ("relate", "left"), ("count",))
        records = cp.serialize_program(prog)
        assert list(records[1]) == ["function", "inputs", "value_inputs"]
        assert cp.parse_program(records) == prog

    @pytest.mark.parametrize(
        "records",
        [
            "scene",
            [{"function": "scene", "inputs": []}],
            [{"function": "scene", "inputs": [], "value_inputs": [], "extra": 1}],
            [rec("scene", [True])],
            [rec("scene", []), rec("filter_color", [0], [3]), rec("count", [1])],
            [rec("explode", [])],
            [[]],
        ],
    )
    def test_malformed(self, records: object) -> None:
        with pytest.raises(ProgramParseError):
            cp.parse_program(records)

    def test_vocab_literals(self) -> None:
        records = [rec("scene", []), rec("filter_color", [0], ["magenta"]), rec("count", [1])]
        cp.parse_program(records)  # no vocabulary, no literal check
        with pytest.raises(InvalidLiteralError, match="magenta"):
            cp.parse_program(records, vocab=default_vocabulary())


class TestCheckLiterals:
    def test_relation(self) -> None:
        prog = chain(("scene",), ("unique",), ("relate", "above"), ("count",))
        with pytest.raises(InvalidLiteralError, match="relation"):
            cp.check_literals(prog, default_vocabulary())

    def test_part_name(self) -> None:
        prog = chain(
            ("scene",), ("unique",), ("object_to_part",), ("filter_part_name", "door"),
            ("unique",), ("query_color",),
        )  # fmt: skip
        cp.check_literals(prog, default_vocabulary())

    def test_category(self) -> None:
        prog = chain(("scene",), ("filter_category", "bus"), ("count",))
        cp.check_literals(prog, default_vocabulary())

    def test_choices(self) -> None:
        vocab = default_vocabulary()
        assert cp.literal_choices("relation", vocab) == ("left", "right", "front", "behind")
        assert cp.literal_choices("color", vocab) == vocab.colors
