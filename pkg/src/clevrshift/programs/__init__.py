"""clevrshift: the typed reasoning-program language.

Programs are CLEVR-style lists of operations. Each operation names a function
from a closed set, the earlier operations it consumes and its literal
arguments. Types are resolved from the signature table, which overloads some
functions on object-level and part-level inputs.
"""

__all__ = [
    # Signatures
    "ValueType",
    "Signature",
    "SIGNATURES",
    "ANSWER_TYPES",
    "ATTRIBUTE_TYPES",
    "FILTER_AXES",
    "QUERY_AXES",
    "SAME_AXES",
    "EQUAL_AXES",
    "resolve_signature",
    # Programs
    "Operation",
    "Program",
    "typecheck",
    "Answer",
    "ANSWER_KINDS",
    # Records
    "parse_program",
    "serialize_program",
    "check_literals",
    "literal_choices",
    # Editing
    "IndexMap",
    "remove_operation",
    "insert_operation",
    "replace_operation",
    "replace_with_scene",
    "prune",
]

from jaxtyping import install_import_hook

from clevrshift.setup_package import RUNTIME_TYPECHECKER

with install_import_hook("clevrshift.programs", RUNTIME_TYPECHECKER):
    from ._src.answer import ANSWER_KINDS, Answer
    from ._src.core import Operation, Program, typecheck
    from ._src.edit import (
        IndexMap,
        insert_operation,
        prune,
        remove_operation,
        replace_operation,
        replace_with_scene,
    )
    from ._src.parse import check_literals, literal_choices, parse_program, serialize_program
    from ._src.signatures import (
        ANSWER_TYPES,
        ATTRIBUTE_TYPES,
        EQUAL_AXES,
        FILTER_AXES,
        QUERY_AXES,
        SAME_AXES,
        SIGNATURES,
        Signature,
        ValueType,
        resolve_signature,
    )

# Cleanup
del install_import_hook, RUNTIME_TYPECHECKER
