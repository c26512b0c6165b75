"""clevrshift: shared utilities."""

from . import _io, _random
from ._io import *
from ._random import *

__all__: list[str] = []
__all__ += _random.__all__
__all__ += _io.__all__
