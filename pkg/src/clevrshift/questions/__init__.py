"""clevrshift: question generation.

Templates pair a text form with a program skeleton. Instantiating one on a
scene binds its slots to the scene, applies a redundancy policy (``rd-``,
``rd`` or ``rd+``) and renders the text. See
:mod:`clevrshift.questions._src.templates` for the slot grammar and
:mod:`clevrshift.questions._src.realize` for the rewrite rules.
"""

__all__ = [
    # Templates
    "Template",
    "FAMILIES",
    "OBJECT_FAMILIES",
    "PART_FAMILIES",
    "load_templates",
    "default_templates",
    # Structure
    "Chain",
    "chains",
    "referent_numbers",
    # Instantiation
    "bind_template",
    "instantiate",
    "REDUNDANCY_VARIANTS",
    "QuestionRecord",
    "generate_for_scene",
    "number_questions",
    # Redundancy
    "redundancy_audit",
    "strip_redundancy",
    "saturate_redundancy",
    "STRIP_PRIORITY",
    # Text
    "realize_text",
    "plural",
    "RELATION_PHRASES",
    # I/O
    "question_to_json",
    "question_from_json",
    "dump_questions",
    "load_questions",
]

from jaxtyping import install_import_hook

from clevrshift.setup_package import RUNTIME_TYPECHECKER

with install_import_hook("clevrshift.questions", RUNTIME_TYPECHECKER):
    from ._src.bind import bind_template
    from ._src.generate import (
        REDUNDANCY_VARIANTS,
        QuestionRecord,
        generate_for_scene,
        instantiate,
        number_questions,
    )
    from ._src.io import dump_questions, load_questions, question_from_json, question_to_json
    from ._src.realize import RELATION_PHRASES, plural, realize_text
    from ._src.redundancy import (
        STRIP_PRIORITY,
        redundancy_audit,
        saturate_redundancy,
        strip_redundancy,
    )
    from ._src.structure import Chain, chains, referent_numbers
    from ._src.templates import (
        FAMILIES,
        OBJECT_FAMILIES,
        PART_FAMILIES,
        Template,
        default_templates,
        load_templates,
    )

# Cleanup
del install_import_hook, RUNTIME_TYPECHECKER
