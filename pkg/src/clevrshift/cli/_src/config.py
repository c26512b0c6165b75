"""Resolved run configuration.

Every subcommand resolves its options as flags > ``--config`` file >
compiled defaults, and records the result in ``<command>.provenance.json``
next to its outputs.
"""

__all__ = [
    "COMMANDS",
    "DEFAULTS",
    "SPLITS",
    "load_config_file",
    "resolve",
    "parse_questions_per_scene",
    "vocabulary_from",
    "write_provenance",
]

import logging
from collections.abc import Mapping
from pathlib import Path
from types import MappingProxyType
from typing import Any, Final

from clevrshift.concepts import ConceptVocabulary, default_vocabulary, load_vocabulary
from clevrshift.errors import InvalidParameterError
from clevrshift.utils import dump_json, info_block, load_json

logger = logging.getLogger(__name__)

COMMANDS: Final = ("generate", "perturb", "execute", "evaluate")

SPLITS: Final = MappingProxyType({"train": 0, "val": 1, "test": 2})
"""Split name -> index folded into every key of that split."""

_COMMON: Final = {"seed": 0, "out": ".", "jobs": 1}

DEFAULTS: Final = MappingProxyType(
    {
        "generate": {
            **_COMMON,
            "num_scenes": 100,
            "visual": "mid",
            "dist": "bal",
            "comp": None,
            "peak": 0.8,
            "redundancy": "rd",
            "questions_per_scene": "object=10,part=10",
            "split": "train",
            "templates": None,
            "family_weights": None,
            "attempts_per_question": 50,
        },
        "perturb": {
            **_COMMON,
            "scenes": None,
            "epsilon": 0.0,
            "pos_sigma": 0.0,
            "miss": 0.0,
            "spurious": 0.0,
            "confusion": 0.0,
            "confusion_share": 0.6,
        },
        "execute": {
            **_COMMON,
            "mode": "det",
            "questions": None,
            "scenes": None,
            "perceived": None,
            "train_questions": None,
            "threshold": 0.7,
            "relate_a": 20.0,
            "relate_b": 0.02,
            "relation_mode": "soft",
            "query_rule": "joint-argmax",
        },
        "evaluate": {
            **_COMMON,
            "grid": None,
            "pred": None,
            "gold": None,
        },
    }
)


def _normalize(section: Mapping[str, Any], where: str) -> dict[str, Any]:
    if not isinstance(section, Mapping):
        msg = f"config section {where!r} must be an object"
        raise InvalidParameterError(msg)
    return {str(k).lstrip("-").replace("-", "_"): v for k, v in section.items()}


def load_config_file(path: str | Path | None, /) -> dict[str, Any]:
    """Read a ``--config`` file.

    Top-level keys are command names plus ``vocabulary``. Option keys may be
    written as flags (``num-scenes``) or as identifiers (``num_scenes``).
    """
    if path is None:
        return {}
    payload = load_json(path)
    if not isinstance(payload, Mapping):
        msg = f"config file {path} must hold a JSON object"
        raise InvalidParameterError(msg)
    if unknown := set(payload) - {*COMMANDS, "vocabulary"}:
        msg = f"unknown config sections {sorted(unknown)}"
        raise InvalidParameterError(msg)
    out = {k: _normalize(v, k) for k, v in payload.items() if k in COMMANDS}
    if "vocabulary" in payload:
        out["vocabulary"] = dict(payload["vocabulary"])
    return out


def resolve(
    command: str, flags: Mapping[str, Any], file_config: Mapping[str, Any], /
) -> dict[str, Any]:
    """Merge compiled defaults, the config file section and explicit flags.

    Examples
    --------
    >>> from clevrshift.cli import resolve
    >>> cfg = resolve("generate", {"num_scenes": 5},
    ...               {"generate": {"num_scenes": 50, "visual": "easy"}})
    >>> cfg["num_scenes"], cfg["visual"], cfg["dist"]
    (5, 'easy', 'bal')

    """
    defaults = DEFAULTS[command]
    section = file_config.get(command, {})
    if unknown := set(section) - set(defaults):
        msg = f"unknown {command} options in config file: {sorted(unknown)}"
        raise InvalidParameterError(msg)
    resolved = {**defaults, **section, **flags}
    if not 0 <= int(resolved["seed"]) < 2**64:
        msg = f"seed must be a 64-bit unsigned integer, got {resolved['seed']}"
        raise InvalidParameterError(msg)
    if int(resolved["jobs"]) < 1:
        msg = f"jobs must be positive, got {resolved['jobs']}"
        raise InvalidParameterError(msg)
    return resolved


def parse_questions_per_scene(grid: str | Mapping[str, int], /) -> tuple[int, int]:
    """Parse ``object=10,part=10`` into ``(n_object, n_part)``.

    Examples
    --------
    >>> from clevrshift.cli import parse_questions_per_scene
    >>> parse_questions_per_scene("object=4,part=0")
    (4, 0)
    >>> parse_questions_per_scene("object=4")
    (4, 10)

    """
    counts = {"object": 10, "part": 10}
    try:
        if isinstance(grid, Mapping):
            items = {str(k): int(v) for k, v in grid.items()}
        else:
            items = {
                k.strip(): int(v)
                for k, v in (item.split("=") for item in grid.split(",") if item.strip())
            }
    except ValueError as e:
        msg = f"questions per scene must look like 'object=10,part=10', got {grid!r}"
        raise InvalidParameterError(msg) from e
    if unknown := set(items) - set(counts):
        msg = f"unknown question kinds {sorted(unknown)}; expected object and part"
        raise InvalidParameterError(msg)
    counts |= items
    if min(counts.values()) < 0:
        msg = "question counts must be non-negative"
        raise InvalidParameterError(msg)
    return counts["object"], counts["part"]


def vocabulary_from(file_config: Mapping[str, Any], /) -> ConceptVocabulary:
    if overrides := file_config.get("vocabulary"):
        return load_vocabulary(overrides)
    return default_vocabulary()


def write_provenance(
    out: str | Path, command: str, resolved: Mapping[str, Any], /, **extra: Any
) -> Path:
    """Write the resolved configuration and tool version next to the outputs."""
    from clevrshift import __version__

    payload = {
        "info": info_block("provenance", command=command, version=__version__),
        "config": {k: resolved[k] for k in sorted(resolved)},
        **extra,
    }
    path = dump_json(Path(out) / f"{command}.provenance.json", payload)
    logger.debug("wrote %s", path)
    return path
