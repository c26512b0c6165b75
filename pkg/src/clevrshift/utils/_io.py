"""Deterministic JSON files."""

__all__ = ["FORMAT_VERSION", "dumps", "dump_json", "load_json", "info_block", "digest"]

import hashlib
import json
from pathlib import Path
from typing import Any, Final

from clevrshift.errors import DataError

FORMAT_VERSION: Final = "1.0"
"""Version of every file format written by clevrshift."""


def dumps(payload: Any, /) -> str:
    """Serialize ``payload`` to canonical JSON text.

    Key order is the insertion order of the payload, which every writer in
    the package builds in a fixed order; floats use ``repr`` so values round
    trip exactly.

    Examples
    --------
    >>> from clevrshift.utils import dumps
    >>> dumps({"b": 1, "a": [0.5, True, None]})
    '{"b":1,"a":[0.5,true,null]}\\n'

    """
    return (
        json.dumps(payload, separators=(",", ":"), ensure_ascii=False, allow_nan=False)
        + "\n"
    )


def dump_json(path: str | Path, payload: Any, /) -> Path:
    """Write ``payload`` to ``path`` as canonical JSON and return the path."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(payload), encoding="utf-8")
    return path


def load_json(path: str | Path, /, *, kind: str | None = None) -> Any:
    """Read a JSON file, optionally checking its ``info`` block.

    Parameters
    ----------
    path : str | Path
        File to read.
    kind : str | None, optional
        If given, the file must carry ``info.kind == kind`` and a
        ``format_version`` with the same major version as
        :data:`FORMAT_VERSION`.

    Raises
    ------
    DataError
        If the file is missing, is not JSON, or fails the ``kind`` check.

    """
    path = Path(path)
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError as e:
        msg = f"no such file: {path}"
        raise DataError(msg) from e
    except json.JSONDecodeError as e:
        msg = f"{path} is not valid JSON: {e}"
        raise DataError(msg) from e

    if kind is not None:
        info = payload.get("info", {}) if isinstance(payload, dict) else {}
        if info.get("kind") != kind:
            msg = f"{path} is not a {kind!r} file (info.kind={info.get('kind')!r})"
            raise DataError(msg)
        version = str(info.get("format_version", ""))
        if version.split(".")[0] != FORMAT_VERSION.split(".")[0]:
            msg = f"{path} has unsupported format_version {version!r}"
            raise DataError(msg)
    return payload


def info_block(kind: str, /, **extra: Any) -> dict[str, Any]:
    """Return the ``info`` header embedded at the top of every output file."""
    return {"kind": kind, "format_version": FORMAT_VERSION, **extra}


def digest(payload: Any, /) -> str:
    """Return a short stable digest of a JSON-serializable payload.

    Examples
    --------
    >>> from clevrshift.utils import digest
    >>> digest({"a": 1}) == digest({"a": 1}), len(digest({"a": 1}))
    (True, 16)

    """
    return hashlib.sha256(dumps(payload).encode("utf-8")).hexdigest()[:16]
