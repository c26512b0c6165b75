"""``clevrshift`` program execution."""

__all__: list[str] = []
