"""``clevrshift`` scenes."""

__all__: list[str] = []
