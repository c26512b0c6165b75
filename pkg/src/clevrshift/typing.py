"""Type hints for clevrshift.

As indicated by `__all__`, this module does not export any names. The type hints
defined here may be changed or removed without notice. They are intended for use
in other modules within the `clevrshift` package.

Notes
-----
- "n" is the number of (detected) objects, "m" the number of detected parts.
- "k" is the size of a concept vocabulary axis, e.g. 8 for colors.

"""

__all__: list[str] = []

from typing import TypeAlias

from jaxtyping import Array, Bool, Float, Int, PRNGKeyArray

# =============================================================================

Shape: TypeAlias = tuple[int, ...]

Key: TypeAlias = PRNGKeyArray
"""A typed JAX PRNG key."""

# =============================================================================
# Scalars

FloatSz0: TypeAlias = Float[Array, ""]
IntSz0: TypeAlias = Int[Array, ""]

FloatLike: TypeAlias = FloatSz0 | float | int
"""A float(/int) or float scalar."""

# =============================================================================
# Concept distributions

Weights: TypeAlias = Float[Array, "k"]
"""Probability weights over one concept axis, in canonical order."""

CDF: TypeAlias = Float[Array, "k"]

RowMatrix: TypeAlias = Float[Array, "s k"]
"""One categorical distribution per row, e.g. color-given-shape."""

# =============================================================================
# Selection vectors and likelihood tables

SelectionVector: TypeAlias = Float[Array, "n"]
"""Per-object (or per-part) selection probabilities in [0, 1]."""

Table: TypeAlias = Float[Array, "n k"]
"""Per-detection categorical likelihood table over one axis."""

Centers: TypeAlias = Float[Array, "n 2"]
"""Detection centers in image-plane units."""

Indices: TypeAlias = Int[Array, "n"]
Mask: TypeAlias = Bool[Array, "n"]
