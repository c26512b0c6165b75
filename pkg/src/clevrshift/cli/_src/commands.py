"""Subcommand implementations.

Each ``run_*`` function takes a resolved configuration (see
:func:`~clevrshift.cli.resolve`) and returns the paths it wrote.
"""

__all__ = ["run_generate", "run_perturb", "run_execute", "run_evaluate", "EXECUTE_MODES"]

import logging
from collections.abc import Mapping, Sequence
from concurrent.futures import ProcessPoolExecutor
from multiprocessing import get_context
from pathlib import Path
from typing import Any, Final

from .config import SPLITS, parse_questions_per_scene
from clevrshift.concepts import ConceptVocabulary, load_vocabulary
from clevrshift.errors import ConfigConflictError, InvalidParameterError
from clevrshift.evaluation import (
    evaluate_manifest,
    format_grid,
    format_score,
    grid_record,
    score_files,
    score_record,
)
from clevrshift.execution import (
    ProbExecConfig,
    dump_predictions,
    predict_det,
    predict_hardened,
    predict_majority,
    predict_prob,
    predict_random,
)
from clevrshift.perception import NoiseConfig, dump_perceived, load_perceived, perceive
from clevrshift.questions import (
    default_templates,
    dump_questions,
    generate_for_scene,
    load_questions,
    load_templates,
    number_questions,
    question_from_json,
    question_to_json,
)
from clevrshift.scenes import (
    GenConfig,
    dump_scenes,
    load_scenes,
    sample_scene,
    scene_from_json,
    scene_to_json,
)
from clevrshift.utils import RandomStream, derive_key, dump_json

logger = logging.getLogger(__name__)

EXECUTE_MODES: Final = ("det", "prob", "det-hardened", "majority", "random")

_QUESTIONS: Final = 4
"""Key tag of question instantiation; the scene sampler uses tags 0-3."""

_CHUNKS_PER_JOB: Final = 4


def _require(resolved: Mapping[str, Any], name: str, why: str) -> Path:
    if resolved.get(name) is None:
        flag = "--" + name.replace("_", "-")
        msg = f"{flag} is required {why}"
        raise InvalidParameterError(msg)
    return Path(resolved[name])


# =============================================================================
# generate


def _gen_config(resolved: Mapping[str, Any], vocab: ConceptVocabulary) -> GenConfig:
    if resolved["comp"] is not None and resolved["dist"] != "bal":
        msg = (
            f"--comp {resolved['comp']} controls colors and cannot be combined "
            f"with --dist {resolved['dist']}"
        )
        raise ConfigConflictError(msg)
    return GenConfig.from_variants(
        resolved["visual"],
        resolved["dist"],
        resolved["comp"],
        seed=int(resolved["seed"]),
        peak=float(resolved["peak"]),
        vocab=vocab,
    )


def _generate_chunk(
    resolved: Mapping[str, Any],
    vocab_overrides: Mapping[str, Any] | None,
    scene_ids: Sequence[int],
) -> list[tuple[dict[str, Any], list[dict[str, Any]]]]:
    """Generate a run of scenes and their questions, as JSON records.

    Runs in worker processes, so it rebuilds everything from plain data.
    """
    vocab = load_vocabulary(vocab_overrides or {})
    cfg = _gen_config(resolved, vocab)
    templates = (
        default_templates()
        if resolved["templates"] is None
        else load_templates(resolved["templates"])
    )
    n_object, n_part = parse_questions_per_scene(resolved["questions_per_scene"])
    split = SPLITS[resolved["split"]]
    config_digest = cfg.digest()

    out = []
    for sid in scene_ids:
        scene = sample_scene(cfg, sid, split=split, config_digest=config_digest)
        rng = RandomStream(derive_key(cfg.seed, split, sid, _QUESTIONS))
        questions = generate_for_scene(
            scene,
            templates,
            rng=rng,
            n_object=n_object,
            n_part=n_part,
            redundancy=resolved["redundancy"],
            vocab=vocab,
            family_weights=resolved["family_weights"],
            attempts_per_question=int(resolved["attempts_per_question"]),
        )
        out.append((scene_to_json(scene), [question_to_json(q) for q in questions]))
    return out


def _chunks(n: int, k: int) -> list[range]:
    size = max(1, -(-n // k))
    return [range(i, min(i + size, n)) for i in range(0, n, size)]


def run_generate(
    resolved: Mapping[str, Any], /, *, vocab_overrides: Mapping[str, Any] | None = None
) -> list[Path]:
    """Write ``scenes.json`` and ``questions.json``.

    Scene ids are split into contiguous chunks; with ``jobs > 1`` the chunks
    run in a spawn-context process pool. Results are merged in scene-id order,
    so the output does not depend on ``jobs``.
    """
    if resolved["split"] not in SPLITS:
        msg = f"split must be one of {tuple(SPLITS)}, got {resolved['split']!r}"
        raise InvalidParameterError(msg)
    n_scenes, jobs = int(resolved["num_scenes"]), int(resolved["jobs"])
    if n_scenes < 1:
        msg = f"num-scenes must be positive, got {n_scenes}"
        raise InvalidParameterError(msg)
    vocab = load_vocabulary(vocab_overrides or {})
    cfg = _gen_config(resolved, vocab)  # fail fast, before any worker starts

    chunks = _chunks(n_scenes, jobs * _CHUNKS_PER_JOB if jobs > 1 else 1)
    if jobs == 1:
        results = [_generate_chunk(resolved, vocab_overrides, c) for c in chunks]
    else:
        args = dict(resolved)
        with ProcessPoolExecutor(max_workers=jobs, mp_context=get_context("spawn")) as pool:
            futures = [pool.submit(_generate_chunk, args, vocab_overrides, c) for c in chunks]
            results = [f.result() for f in futures]

    scenes, questions = [], []
    for chunk in results:
        for scene_record, question_records in chunk:
            scenes.append(scene_from_json(scene_record))
            questions += [question_from_json(q, vocab=vocab) for q in question_records]
        logger.info("generated %d/%d scenes", len(scenes), n_scenes)
    questions = number_questions(questions)

    out = Path(resolved["out"])
    header = {
        "split": resolved["split"],
        "seed": cfg.seed,
        "config_digest": cfg.digest(),
        "visual": cfg.visual,
        "dist": resolved["dist"],
        "comp": resolved["comp"],
    }
    return [
        dump_scenes(out / "scenes.json", scenes, **header),
        dump_questions(
            out / "questions.json", questions, redundancy=resolved["redundancy"], **header
        ),
    ]


# =============================================================================
# perturb


def run_perturb(
    resolved: Mapping[str, Any], /, *, vocab: ConceptVocabulary | None = None
) -> list[Path]:
    """Write ``perceived.json``: every scene of ``--scenes`` seen through noise."""
    scenes, _ = load_scenes(_require(resolved, "scenes", "by perturb"))
    noise = NoiseConfig(
        epsilon=resolved["epsilon"],
        position_sigma=resolved["pos_sigma"],
        miss_rate=resolved["miss"],
        spurious_rate=resolved["spurious"],
        confusion=resolved["confusion"],
        confusion_share=resolved["confusion_share"],
        seed=resolved["seed"],
    )
    perceived = [perceive(s, noise, vocab=vocab) for s in scenes]
    logger.info("perceived %d scenes at epsilon=%g", len(perceived), noise.epsilon)
    path = Path(resolved["out"]) / "perceived.json"
    return [dump_perceived(path, perceived, vocab=vocab, noise=noise.to_dict())]


# =============================================================================
# execute


def run_execute(
    resolved: Mapping[str, Any], /, *, vocab: ConceptVocabulary | None = None
) -> list[Path]:
    """Write ``predictions.json`` for ``--questions`` under the chosen mode."""
    mode = resolved["mode"]
    if mode not in EXECUTE_MODES:
        msg = f"mode must be one of {EXECUTE_MODES}, got {mode!r}"
        raise InvalidParameterError(msg)
    questions, _ = load_questions(
        _require(resolved, "questions", "by execute"), vocab=vocab
    )
    info: dict[str, Any] = {"mode": mode}

    match mode:
        case "det":
            scenes, _ = load_scenes(_require(resolved, "scenes", "by --mode det"))
            predictions = predict_det(questions, {s.scene_id: s for s in scenes})
        case "prob" | "det-hardened":
            pscenes, _ = load_perceived(
                _require(resolved, "perceived", f"by --mode {mode}"), vocab=vocab
            )
            by_id = {p.scene_id: p for p in pscenes}
            if mode == "prob":
                cfg = ProbExecConfig(
                    a=resolved["relate_a"],
                    b=resolved["relate_b"],
                    select_threshold=resolved["threshold"],
                    relation_mode=resolved["relation_mode"],
                    query_rule=resolved["query_rule"],
                )
                info["executor"] = cfg.to_dict()
                predictions = predict_prob(questions, by_id, cfg, vocab=vocab)
            else:
                predictions = predict_hardened(questions, by_id, vocab=vocab)
        case "majority" | "random":
            train, _ = load_questions(
                _require(resolved, "train_questions", f"by --mode {mode}"), vocab=vocab
            )
            if mode == "majority":
                predictions = predict_majority(train, questions)
            else:
                predictions = predict_random(train, questions, seed=int(resolved["seed"]))

    answered = sum(a is not None for a in predictions.values())
    logger.info("%s: answered %d/%d questions", mode, answered, len(predictions))
    return [dump_predictions(Path(resolved["out"]) / "predictions.json", predictions, **info)]


# =============================================================================
# evaluate


def run_evaluate(resolved: Mapping[str, Any], /) -> tuple[list[Path], str]:
    """Write ``report.txt`` and ``report.json``; also return the text."""
    grid, pred, gold = resolved["grid"], resolved["pred"], resolved["gold"]
    if grid is not None and (pred is not None or gold is not None):
        msg = "--grid cannot be combined with --pred/--gold"
        raise ConfigConflictError(msg)

    if grid is not None:
        accuracies, rd = evaluate_manifest(grid)
        text, record = format_grid(accuracies, rd), grid_record(accuracies, rd)
    else:
        pred_path = _require(resolved, "pred", "without --grid")
        gold_path = _require(resolved, "gold", "without --grid")
        report = score_files(pred_path, gold_path)
        text, record = format_score(report), score_record(report)

    out = Path(resolved["out"])
    txt = out / "report.txt"
    txt.parent.mkdir(parents=True, exist_ok=True)
    txt.write_text(text + "\n", encoding="utf-8")
    return [txt, dump_json(out / "report.json", record)], text
