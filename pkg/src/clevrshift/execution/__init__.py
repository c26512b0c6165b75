"""clevrshift: program executors.

The deterministic executor runs programs on ground-truth scene graphs and is
the question generator's answer oracle. The probabilistic executor runs them
on perceived scenes, propagating selection probabilities.
"""

__all__ = [
    # Deterministic
    "ExecValue",
    "ObjectSetValue",
    "ObjectValue",
    "PartSetValue",
    "PartValue",
    "IntegerValue",
    "BooleanValue",
    "AttributeValue",
    "apply_operation",
    "execute",
    "execute_trace",
    "to_answer",
    # Probabilistic
    "ProbExecConfig",
    "ProbObjectSet",
    "ProbObject",
    "ProbPartSet",
    "ProbPart",
    "ProbValue",
    "RELATION_MODES",
    "QUERY_RULES",
    "op_scene",
    "op_filter",
    "op_part_filter",
    "op_relate",
    "op_same",
    "op_intersect",
    "op_union",
    "op_unique_select",
    "op_count",
    "op_exist",
    "op_query",
    "execute_prob",
    "execute_prob_trace",
    # Batch
    "QuestionLike",
    "Predictions",
    "predict_det",
    "predict_prob",
    "predict_hardened",
    "predict_majority",
    "predict_random",
    "dump_predictions",
    "load_predictions",
]

from jaxtyping import install_import_hook

from clevrshift.setup_package import RUNTIME_TYPECHECKER

with install_import_hook("clevrshift.execution", RUNTIME_TYPECHECKER):
    from ._src.baselines import predict_majority, predict_random
    from ._src.batch import (
        Predictions,
        QuestionLike,
        dump_predictions,
        load_predictions,
        predict_det,
        predict_hardened,
        predict_prob,
    )
    from ._src.deterministic import (
        AttributeValue,
        BooleanValue,
        ExecValue,
        IntegerValue,
        ObjectSetValue,
        ObjectValue,
        PartSetValue,
        PartValue,
        apply_operation,
        execute,
        execute_trace,
        to_answer,
    )
    from ._src.probabilistic import (
        QUERY_RULES,
        RELATION_MODES,
        ProbExecConfig,
        ProbObject,
        ProbObjectSet,
        ProbPart,
        ProbPartSet,
        ProbValue,
        execute_prob,
        execute_prob_trace,
        op_count,
        op_exist,
        op_filter,
        op_intersect,
        op_part_filter,
        op_query,
        op_relate,
        op_same,
        op_scene,
        op_union,
        op_unique_select,
    )

# Cleanup
del install_import_hook, RUNTIME_TYPECHECKER
