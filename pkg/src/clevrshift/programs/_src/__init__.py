"""``clevrshift`` reasoning programs."""

__all__: list[str] = []
