"""``clevrshift`` question generation."""

__all__: list[str] = []
