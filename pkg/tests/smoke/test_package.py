from importlib.metadata import version

import pytest

import clevrshift as pkg


def test_version() -> None:
    assert version("clevrshift") == pkg.__version__


def test_all() -> None:
    """Test the `clevrshift` package contents."""
    # Test detailed contents (not order)
    assert set(pkg.__all__) == {
        "__version__",
        "__version_tuple__",
        # modules
        "concepts",
        "scenes",
        "programs",
        "questions",
        "execution",
        "perception",
        "evaluation",
        "cli",
        "errors",
        "utils",
        "typing",
    }


@pytest.mark.parametrize(
    "name",
    [
        "concepts",
        "scenes",
        "programs",
        "questions",
        "execution",
        "perception",
        "evaluation",
        "cli",
        "utils",
    ],
)
def test_subpackage_exports(name: str) -> None:
    """Every name in a subpackage's `__all__` is importable from it."""
    sub = getattr(pkg, name)
    missing = [n for n in sub.__all__ if not hasattr(sub, n)]
    assert missing == []
    assert len(set(sub.__all__)) == len(sub.__all__)


@pytest.mark.parametrize(
    "name",
    ["concepts", "scenes", "programs", "questions", "execution", "perception", "evaluation", "cli"],
)
def test_import_hook_cleaned_up(name: str) -> None:
    sub = getattr(pkg, name)
    assert not hasattr(sub, "install_import_hook")
    assert not hasattr(sub, "RUNTIME_TYPECHECKER")


def test_typing_exports_nothing() -> None:
    assert pkg.typing.__all__ == []
