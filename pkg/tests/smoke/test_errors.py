import pytest

from clevrshift import errors


@pytest.mark.parametrize("name", errors.__all__)
def test_rooted(name: str) -> None:
    """Every exception derives from the package base class."""
    assert issubclass(getattr(errors, name), errors.ClevrShiftError)


@pytest.mark.parametrize(
    "name",
    ["NonUniqueError", "MissingTextureError", "EmptySelectionError", "ProgramTypeError"],
)
def test_data_errors(name: str) -> None:
    assert issubclass(getattr(errors, name), errors.DataError)
    assert not issubclass(getattr(errors, name), errors.ConfigError)


def test_config_errors_are_value_errors() -> None:
    assert issubclass(errors.InvalidParameterError, ValueError)
    assert issubclass(errors.ConfigConflictError, errors.ConfigError)
