"""``clevrshift`` concepts."""

__all__: list[str] = []
