"""Exceptions raised by clevrshift.

Two families matter to callers: :class:`ConfigError` for bad user
configuration and :class:`DataError` for data that is malformed or cannot be
satisfied. The command line maps them to distinct exit codes.

Examples
--------
>>> from clevrshift.errors import NonUniqueError, DataError
>>> err = NonUniqueError(3, 2)
>>> isinstance(err, DataError), err.index, err.size
(True, 3, 2)

"""

__all__ = [
    "ClevrShiftError",
    # Configuration
    "ConfigError",
    "InvalidParameterError",
    "ConfigConflictError",
    # Data
    "DataError",
    "DegenerateLayoutError",
    "PlacementExhaustedError",
    "ProgramParseError",
    "ProgramTypeError",
    "InvalidLiteralError",
    "TemplateError",
    "TemplateExhaustionError",
    "LengthMismatchError",
    "AlignmentError",
    "IncompleteGridError",
    # Execution
    "ExecutionError",
    "NonUniqueError",
    "MissingTextureError",
    "EmptySelectionError",
]


class ClevrShiftError(Exception):
    """Base class of every error raised by clevrshift."""


# =============================================================================
# Configuration


class ConfigError(ClevrShiftError, ValueError):
    """The user-supplied configuration is invalid."""


class InvalidParameterError(ConfigError):
    """A parameter is out of range or names an unknown option."""


class ConfigConflictError(ConfigError):
    """Two options were given that cannot be used together."""


# =============================================================================
# Data


class DataError(ClevrShiftError):
    """Input data is malformed, or cannot satisfy the request."""


class DegenerateLayoutError(DataError, ValueError):
    """Two objects share a coordinate, so relations are ill-defined."""


class PlacementExhaustedError(DataError, RuntimeError):
    """Rejection sampling ran out of retries while placing objects."""


class ProgramParseError(DataError, ValueError):
    """A serialized program is malformed.

    Parameters
    ----------
    index : int | None
        Position of the offending operation, if known.
    msg : str
        Description of the problem.

    """

    def __init__(self, index: int | None, msg: str) -> None:
        self.index = index
        where = "" if index is None else f"operation {index}: "
        super().__init__(f"{where}{msg}")


class ProgramTypeError(ProgramParseError):
    """A program does not typecheck against the signature table."""


class InvalidLiteralError(DataError, ValueError):
    """A literal value is not part of the vocabulary of its axis."""


class TemplateError(DataError, ValueError):
    """A question template is malformed."""


class TemplateExhaustionError(DataError, RuntimeError):
    """The retry budget ran out before enough questions were instantiated."""


class LengthMismatchError(DataError, ValueError):
    """Two selection vectors of different length were combined."""


class AlignmentError(DataError, ValueError):
    """Predictions and gold answers do not cover the same questions."""


class IncompleteGridError(DataError, ValueError):
    """An accuracy grid lacks a cell its Relative Degrade formula needs."""


# =============================================================================
# Execution


class ExecutionError(DataError):
    """A program failed at run time on a particular scene."""


class NonUniqueError(ExecutionError):
    """``unique`` was applied to a set that is not a singleton.

    Parameters
    ----------
    index : int
        Position of the ``unique`` operation.
    size : int
        Size of the set it received.

    """

    def __init__(self, index: int, size: int) -> None:
        self.index = index
        self.size = size
        super().__init__(f"operation {index}: unique on a set of size {size}")


class MissingTextureError(ExecutionError):
    """``query_texture`` reached an object without a texture."""


class EmptySelectionError(ExecutionError):
    """A selection step received no detections to select from."""
