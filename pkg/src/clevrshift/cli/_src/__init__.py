"""``clevrshift`` command line."""

__all__: list[str] = []
