"""Question records and per-scene generation."""

__all__ = [
    "QuestionRecord",
    "REDUNDANCY_VARIANTS",
    "instantiate",
    "generate_for_scene",
    "number_questions",
]

import logging
from collections import Counter
from collections.abc import Iterable, Mapping, Sequence
from typing import Final, final

import equinox as eqx
from dataclassish import replace

from .bind import bind_template
from .realize import realize_text
from .redundancy import saturate_redundancy, strip_redundancy
from .templates import FAMILIES, OBJECT_FAMILIES, PART_FAMILIES, Template
from clevrshift.concepts import ConceptVocabulary, default_vocabulary
from clevrshift.errors import ExecutionError, InvalidParameterError, TemplateExhaustionError
from clevrshift.execution import execute
from clevrshift.programs import Answer, Program
from clevrshift.scenes import Scene
from clevrshift.utils import RandomStream

logger = logging.getLogger(__name__)

REDUNDANCY_VARIANTS: Final = ("rd-", "rd", "rd+")


@final
class QuestionRecord(eqx.Module):  # type: ignore[misc]
    """A generated question.

    Executing :attr:`program` on the scene deterministically gives
    :attr:`answer`.
    """

    scene_id: int
    text: str
    program: Program
    answer: Answer
    template_id: str
    family: str
    redundancy_variant: str
    question_index: int = 0
    """Position in the question file; assigned by :func:`number_questions`."""

    def __check_init__(self) -> None:
        if self.redundancy_variant not in REDUNDANCY_VARIANTS:
            msg = f"redundancy variant must be one of {REDUNDANCY_VARIANTS}"
            raise InvalidParameterError(msg)


def instantiate(
    template: Template,
    scene: Scene,
    redundancy: str,
    rng: RandomStream,
    /,
    *,
    vocab: ConceptVocabulary | None = None,
) -> QuestionRecord | None:
    """Instantiate ``template`` on ``scene``, or return `None` if it does not fit.

    ``rd`` keeps the attributes drawn while binding, ``rd-`` strips every
    redundant filter and relate clause and ``rd+`` saturates every referent.

    Examples
    --------
    >>> from clevrshift.execution import execute
    >>> from clevrshift.questions import default_templates, instantiate, redundancy_audit
    >>> from clevrshift.scenes import GenConfig, sample_scene
    >>> from clevrshift.utils import RandomStream, derive_key

    >>> scene = sample_scene(GenConfig.from_variants("easy"), 0)
    >>> rng = RandomStream(derive_key(0))
    >>> rec = instantiate(default_templates()["query_color"], scene, "rd-", rng)
    >>> rec is None or (execute(rec.program, scene) == rec.answer
    ...                 and redundancy_audit(rec.program, scene) == [])
    True

    """
    if redundancy not in REDUNDANCY_VARIANTS:
        msg = f"redundancy must be one of {REDUNDANCY_VARIANTS}, got {redundancy!r}"
        raise InvalidParameterError(msg)
    vocab = default_vocabulary() if vocab is None else vocab

    try:
        program = bind_template(template, scene, rng, vocab=vocab)
        if program is None:
            return None
        execute(program, scene)
        match redundancy:
            case "rd-":
                program = strip_redundancy(program, scene)
            case "rd+":
                program = saturate_redundancy(program, scene, rng)
        answer = execute(program, scene)
    except ExecutionError as e:
        logger.debug("template %s failed on scene %d: %s", template.id, scene.scene_id, e)
        return None

    return QuestionRecord(
        scene_id=scene.scene_id,
        text=realize_text(program, template),
        program=program,
        answer=answer,
        template_id=template.id,
        family=template.family,
        redundancy_variant=redundancy,
    )


# =============================================================================


def _by_family(
    templates: Iterable[Template], families: Sequence[str], scene: Scene
) -> dict[str, list[Template]]:
    out: dict[str, list[Template]] = {}
    for t in templates:
        if t.family in families and (scene.textured or not t.requires_texture):
            out.setdefault(t.family, []).append(t)
    return out


def _generate_group(
    scene: Scene,
    groups: Mapping[str, Sequence[Template]],
    want: int,
    *,
    redundancy: str,
    rng: RandomStream,
    vocab: ConceptVocabulary,
    weights: Mapping[str, float],
    budget: int,
) -> list[QuestionRecord]:
    if want == 0:
        return []
    families = sorted(f for f in groups if weights.get(f, 1.0) > 0)
    if not families:
        msg = f"scene {scene.scene_id}: no usable templates for families {sorted(groups)}"
        raise TemplateExhaustionError(msg)

    records: list[QuestionRecord] = []
    texts: set[str] = set()
    made: Counter[str] = Counter()
    for attempt in range(budget):
        # Families that are behind get picked more often.
        family = families[
            rng.weighted_index([weights.get(f, 1.0) / (1 + made[f]) for f in families])
        ]
        rec = instantiate(rng.choice(groups[family]), scene, redundancy, rng, vocab=vocab)
        if rec is None:
            continue
        if rec.text in texts and attempt < budget // 2:
            continue
        texts.add(rec.text)
        made[family] += 1
        records.append(rec)
        if len(records) == want:
            return records

    msg = (
        f"scene {scene.scene_id}: only {len(records)} of {want} questions after "
        f"{budget} attempts"
    )
    raise TemplateExhaustionError(msg)


def generate_for_scene(
    scene: Scene,
    templates: Iterable[Template] | Mapping[str, Template],
    /,
    *,
    rng: RandomStream,
    n_object: int = 10,
    n_part: int = 10,
    redundancy: str = "rd",
    vocab: ConceptVocabulary | None = None,
    family_weights: Mapping[str, float] | None = None,
    attempts_per_question: int = 50,
) -> list[QuestionRecord]:
    """Generate ``n_object`` object-based then ``n_part`` part-based questions.

    Families are sampled with weight ``w_f / (1 + n_f)``, where ``n_f``
    counts the questions made so far, so the mix stays balanced. Templates
    that do not fit are retried. During the first half of the attempt budget
    repeated question texts are rejected.

    Raises
    ------
    TemplateExhaustionError
        If the attempt budget (``attempts_per_question`` per wanted question)
        runs out.

    """
    if n_object < 0 or n_part < 0 or attempts_per_question < 1:
        msg = "question counts must be non-negative and the budget positive"
        raise InvalidParameterError(msg)
    weights = dict(family_weights or {})
    if unknown := set(weights) - set(FAMILIES):
        msg = f"unknown question families {sorted(unknown)}"
        raise InvalidParameterError(msg)
    if isinstance(templates, Mapping):
        templates = templates.values()
    templates = list(templates)
    vocab = default_vocabulary() if vocab is None else vocab

    out: list[QuestionRecord] = []
    for want, families in ((n_object, OBJECT_FAMILIES), (n_part, PART_FAMILIES)):
        out += _generate_group(
            scene,
            _by_family(templates, families, scene),
            want,
            redundancy=redundancy,
            rng=rng,
            vocab=vocab,
            weights=weights,
            budget=attempts_per_question * want,
        )
    logger.debug("scene %d: %d questions", scene.scene_id, len(out))
    return out


def number_questions(records: Iterable[QuestionRecord], /, start: int = 0) -> list[QuestionRecord]:
    """Assign consecutive question indices in iteration order."""
    return [replace(r, question_index=start + k) for k, r in enumerate(records)]
