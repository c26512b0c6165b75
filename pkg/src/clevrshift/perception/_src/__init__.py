"""``clevrshift`` perception simulation."""

__all__: list[str] = []
