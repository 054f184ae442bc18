from .gram import GramForm
from .subspaces import AlgSubspace, RatSubspace, as_algebraic, require_rational
from .lattices import (
    Sublattice,
    adapted_zbasis,
    flag_adapted_basis,
    lattice_membership,
    preimage_in_generators,
    projected_lattice,
    solve_unique,
    sublattice_from_generators,
    subspace_lattice,
)
from .closure import AdaptedBasis, ClosureResult, closure_density_defect, l_closure
from .documents import SubspaceDocument, parse_subspace_document

__all__ = [
    "GramForm", "AlgSubspace", "RatSubspace", "as_algebraic", "require_rational", "Sublattice", "adapted_zbasis",
    "flag_adapted_basis", "lattice_membership", "preimage_in_generators", "projected_lattice",
    "solve_unique", "sublattice_from_generators", "subspace_lattice", "AdaptedBasis",
    "ClosureResult", "closure_density_defect", "l_closure", "SubspaceDocument", "parse_subspace_document",
]
