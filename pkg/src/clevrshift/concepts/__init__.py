"""clevrshift: concept vocabulary and distribution control.

The vocabulary fixes the canonical order of every concept axis. Concept
distributions and co-distribution matrices are expressed in that order.
"""

__all__ = [
    # Vocabulary
    "ConceptVocabulary",
    "default_vocabulary",
    "load_vocabulary",
    "ATTRIBUTE_AXES",
    # Distributions
    "ConceptDistribution",
    "power_law_distribution",
    "variant_distribution",
    "sample_concept",
    "sample_rows",
    "DISTRIBUTION_AXES",
    "VARIANT_KINDS",
    # Compositionality
    "CoDistributionMatrix",
    "co_matrix",
    "CO_MODES",
]

from jaxtyping import install_import_hook

from clevrshift.setup_package import RUNTIME_TYPECHECKER

with install_import_hook("clevrshift.concepts", RUNTIME_TYPECHECKER):
    from ._src.compositionality import CO_MODES, CoDistributionMatrix, co_matrix
    from ._src.distributions import (
        DISTRIBUTION_AXES,
        VARIANT_KINDS,
        ConceptDistribution,
        power_law_distribution,
        sample_concept,
        sample_rows,
        variant_distribution,
    )
    from ._src.vocabulary import (
        ATTRIBUTE_AXES,
        ConceptVocabulary,
        default_vocabulary,
        load_vocabulary,
    )

# Cleanup
del install_import_hook, RUNTIME_TYPECHECKER
