from clevrshift import utils


def test__all__() -> None:
    """Test that `clevrshift.utils` has the expected `__all__`."""
    assert utils.__all__ == [*utils._random.__all__, *utils._io.__all__]
