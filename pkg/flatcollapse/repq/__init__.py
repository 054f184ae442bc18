from .isotypic import (
    IsotypicComponent,
    blocks_of,
    class_sums,
    conjugacy_classes,
    cyclic_module,
    decompose,
    irreducible_summands,
    isotypic_decomposition,
    probe_vectors,
    split_isotypic,
)
from .isequence import (
    BUDGET_LIMITED,
    CERTIFIED,
    ISequence,
    TheoremCResult,
    i_sequence,
    predicted_collapse_sequence,
    proper_selections,
    selection_subspace,
    sequence_from_components,
    theorem_c_witnesses,
)

__all__ = [
    "IsotypicComponent", "blocks_of", "class_sums", "conjugacy_classes", "cyclic_module", "decompose",
    "irreducible_summands", "isotypic_decomposition", "probe_vectors", "split_isotypic",
    "BUDGET_LIMITED", "CERTIFIED", "ISequence", "TheoremCResult", "i_sequence",
    "predicted_collapse_sequence", "proper_selections", "selection_subspace",
    "sequence_from_components", "theorem_c_witnesses",
]
