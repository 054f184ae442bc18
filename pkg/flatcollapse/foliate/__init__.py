from .leaves import (
    LeafClass,
    LeafData,
    PerpData,
    classify_leaf,
    leaf_group,
    leaves_uniform,
    perp_data,
    principal_leaf,
    same_leaf,
    sample_leaf_points,
)
from .singular import SingularLocus, SingularStratum, singular_leaf_locus
from .transverse import transverse_pair

__all__ = [
    "LeafClass", "LeafData", "PerpData", "classify_leaf", "leaf_group", "leaves_uniform", "perp_data",
    "principal_leaf", "same_leaf", "sample_leaf_points", "SingularLocus", "SingularStratum",
    "singular_leaf_locus", "transverse_pair",
]
