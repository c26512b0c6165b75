"""The ``clevrshift`` command.

Exit codes: ``0`` success, ``2`` configuration error (including bad flags),
``3`` data error. Anything else propagates.
"""

__all__ = ["build_parser", "main", "EXIT_OK", "EXIT_CONFIG", "EXIT_DATA"]

import argparse
import logging
import sys
from collections.abc import Sequence
from typing import Final

from .commands import EXECUTE_MODES, run_evaluate, run_execute, run_generate, run_perturb
from .config import SPLITS, load_config_file, resolve, vocabulary_from, write_provenance
from clevrshift.concepts import CO_MODES, VARIANT_KINDS
from clevrshift.errors import ConfigError, DataError
from clevrshift.execution import QUERY_RULES, RELATION_MODES
from clevrshift.questions import REDUNDANCY_VARIANTS
from clevrshift.scenes import VISUAL_VARIANTS

logger = logging.getLogger(__name__)

EXIT_OK: Final = 0
EXIT_CONFIG: Final = 2
EXIT_DATA: Final = 3

_LOG_FORMAT: Final = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def _common() -> argparse.ArgumentParser:
    # Defaults are suppressed so that only explicit flags override the config file.
    p = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    p.add_argument("--seed", type=int, help="master seed, 0 <= seed < 2**64 (default 0)")
    p.add_argument("--out", help="output directory (default .)")
    p.add_argument("--config", dest="config_file", help="JSON configuration file")
    p.add_argument("--jobs", type=int, help="worker processes (default 1)")
    verbosity = p.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="log debug messages")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="log warnings only")
    return p


def build_parser() -> argparse.ArgumentParser:
    """Return the argument parser of the ``clevrshift`` command."""
    parser = argparse.ArgumentParser(
        prog="clevrshift",
        description=(
            "Generate domain-shift controlled scene-graph questions, simulate "
            "perception, execute programs and score predictions."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)
    common = [_common()]
    kw = {"parents": common, "argument_default": argparse.SUPPRESS}

    g = sub.add_parser("generate", help="sample scenes and questions", **kw)
    g.add_argument("--num-scenes", type=int, help="number of scenes (default 100)")
    g.add_argument("--visual", choices=VISUAL_VARIANTS, help="visual complexity (default mid)")
    g.add_argument("--dist", choices=VARIANT_KINDS, help="concept distribution (default bal)")
    g.add_argument("--comp", choices=CO_MODES, help="color-given-shape compositionality")
    g.add_argument("--peak", type=float, help="co-1/co-2 mass on the assigned color (default 0.8)")
    g.add_argument(
        "--redundancy", choices=REDUNDANCY_VARIANTS, help="question redundancy (default rd)"
    )
    g.add_argument(
        "--questions-per-scene", help="e.g. object=10,part=10 (the default)"
    )
    g.add_argument("--split", choices=tuple(SPLITS), help="split (default train)")
    g.add_argument("--templates", help="template file (default: the shipped inventory)")
    g.add_argument(
        "--attempts-per-question", type=int, help="instantiation budget (default 50)"
    )

    p = sub.add_parser("perturb", help="simulate noisy perception of scenes", **kw)
    p.add_argument("--scenes", help="scene file")
    p.add_argument("--epsilon", type=float, help="label smoothing mass (default 0)")
    p.add_argument("--pos-sigma", type=float, help="center jitter in scene units (default 0)")
    p.add_argument("--miss", type=float, help="miss rate (default 0)")
    p.add_argument("--spurious", type=float, help="spurious detections per scene (default 0)")
    p.add_argument(
        "--confusion", type=float, help="probability a table favors a wrong label (default 0)"
    )
    p.add_argument(
        "--confusion-share", type=float, help="mass moved to a wrong label (default 0.6)"
    )

    e = sub.add_parser("execute", help="answer questions", **kw)
    e.add_argument("--mode", choices=EXECUTE_MODES, help="executor (default det)")
    e.add_argument("--questions", help="question file")
    e.add_argument("--scenes", help="ground-truth scene file (det)")
    e.add_argument("--perceived", help="perceived scene file (prob, det-hardened)")
    e.add_argument("--train-questions", help="training question file (majority, random)")
    e.add_argument("--threshold", type=float, help="count/exist threshold (default 0.7)")
    e.add_argument("--relate-a", type=float, help="relation offset, pixels (default 20)")
    e.add_argument("--relate-b", type=float, help="relation sharpness (default 0.02)")
    e.add_argument("--relation-mode", choices=RELATION_MODES, help="default soft")
    e.add_argument("--query-rule", choices=QUERY_RULES, help="default joint-argmax")

    v = sub.add_parser("evaluate", help="score predictions", **kw)
    v.add_argument("--grid", help="grid manifest")
    v.add_argument("--pred", help="prediction file")
    v.add_argument("--gold", help="question file with gold answers")
    return parser


def _configure_logging(verbose: bool, quiet: bool) -> None:
    level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
    logging.basicConfig(level=level, format=_LOG_FORMAT, stream=sys.stderr, force=True)


def _run(args: argparse.Namespace) -> None:
    flags = vars(args)
    command = flags.pop("command")
    file_config = load_config_file(flags.pop("config_file", None))
    flags.pop("verbose", None)
    flags.pop("quiet", None)

    resolved = resolve(command, flags, file_config)
    vocab_overrides = file_config.get("vocabulary")
    vocab = vocabulary_from(file_config)
    extra = {} if vocab_overrides is None else {"vocabulary": vocab_overrides}

    match command:
        case "generate":
            paths = run_generate(resolved, vocab_overrides=vocab_overrides)
        case "perturb":
            paths = run_perturb(resolved, vocab=vocab)
        case "execute":
            paths = run_execute(resolved, vocab=vocab)
        case "evaluate":
            paths, text = run_evaluate(resolved)
            print(text)  # noqa: T201
    paths.append(write_provenance(resolved["out"], command, resolved, **extra))
    for path in paths:
        logger.info("wrote %s", path)


def main(argv: Sequence[str] | None = None) -> int:
    """Run the command line and return its exit code."""
    args = build_parser().parse_args(argv)
    _configure_logging(getattr(args, "verbose", False), getattr(args, "quiet", False))
    try:
        _run(args)
    except ConfigError as e:
        logger.error("configuration error: %s", e)  # noqa: TRY400
        return EXIT_CONFIG
    except DataError as e:
        logger.error("data error: %s", e)  # noqa: TRY400
        return EXIT_DATA
    return EXIT_OK
