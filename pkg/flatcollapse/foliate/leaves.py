"""
Leaves of the subspace foliation F_W on ℝⁿ/π.

The leaf through u is the image of W + u. Its group G_W(u) is encoded by
one witness (A, ℓ_A) per holonomy element together with the translation
lattice L_W(u) ⊂ W; the leaf volume is carried as an exact square.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import FrozenSet, List, Optional, Sequence, Tuple

import numpy as np
from sympy import ImmutableMatrix, Rational, sqrt

from ..crysgroup import CrystGroup, check_invariant, require_bieberbach
from ..latgeo import RatSubspace, Sublattice, preimage_in_generators, require_rational, sublattice_from_generators, subspace_lattice
from ..ratcore import identity, to_int_rows, unit_vec

log = logging.getLogger("foliate")


@dataclass(frozen=True)
class PerpData:
    """W with its G-orthogonal complement and projector, computed once per query."""

    w: RatSubspace
    w_perp: RatSubspace
    projector: ImmutableMatrix
    lattice_gens: Tuple[ImmutableMatrix, ...]

    def fixes_perp(self, a: ImmutableMatrix) -> bool:
        """A|_{W⊥} = Id."""
        return all(e == 0 for e in (a - identity(a.rows)) * self.projector)

    def fixes_w(self, a: ImmutableMatrix) -> bool:
        return all(a * b == b for b in self.w.vectors())

    def restriction_to_w(self, a: ImmutableMatrix) -> Tuple[ImmutableMatrix, ...]:
        return tuple(ImmutableMatrix(a * b) for b in self.w.vectors())

    def lift_into_w(self, t: ImmutableMatrix) -> Optional[ImmutableMatrix]:
        """Some ℓ ∈ ℤⁿ with t + ℓ ∈ W, or None."""
        coeffs = preimage_in_generators(ImmutableMatrix(-self.projector * t), self.lattice_gens)
        if coeffs is None:
            return None
        return ImmutableMatrix(len(coeffs), 1, list(coeffs))


def perp_data(g: CrystGroup, w) -> PerpData:
    w = require_rational(w)
    check_invariant(g, w)
    w_perp = w.orthogonal_complement(g.gram)
    p = w_perp.projector(g.gram)
    gens = tuple(ImmutableMatrix(p * unit_vec(g.n, i)) for i in range(g.n))
    return PerpData(w, w_perp, p, gens)


@dataclass(frozen=True)
class LeafData:
    u: Optional[ImmutableMatrix]
    holonomy_subset: Tuple[Tuple[ImmutableMatrix, ImmutableMatrix], ...]
    leaf_lattice: Sublattice
    vol_sq_times_h2: Rational
    restricted_order: int

    @property
    def vol_sq(self) -> Rational:
        return self.vol_sq_times_h2 / self.restricted_order ** 2

    def holonomy(self) -> FrozenSet[ImmutableMatrix]:
        return frozenset(a for a, _ in self.holonomy_subset)

    def to_document(self) -> dict:
        return {
            "holonomy": [{"matrix": to_int_rows(a), "shift": [str(e) for e in ell]} for a, ell in self.holonomy_subset],
            "leaf_lattice": [[str(e) for e in b] for b in self.leaf_lattice.basis],
            "vol_sq": str(self.vol_sq),
            "restricted_holonomy_order": self.restricted_order,
        }


@dataclass(frozen=True)
class LeafClass:
    principal: bool
    index: int = 1

    def to_document(self) -> dict:
        doc = {"kind": "principal" if self.principal else "exceptional"}
        if not self.principal:
            doc["covering_index"] = self.index
        return doc


def _leaf_from_witnesses(
    g: CrystGroup, pd: PerpData, u: Optional[ImmutableMatrix], witnesses: List[Tuple[ImmutableMatrix, ImmutableMatrix]]
) -> LeafData:
    base, _ = subspace_lattice(pd.w)
    translations = list(base.basis)
    restrictions = set()
    for a, ell in witnesses:
        restrictions.add(pd.restriction_to_w(a))
        if u is not None and pd.fixes_w(a):
            translations.append(ImmutableMatrix((a - identity(g.n)) * u + g.translation(a) + ell))
    lattice = sublattice_from_generators(translations, g.n)
    if lattice.rank != pd.w.dim:
        raise ArithmeticError(f"leaf lattice of rank {lattice.rank} in a leaf of dim {pd.w.dim}")
    return LeafData(
        u=u,
        holonomy_subset=tuple(witnesses),
        leaf_lattice=lattice,
        vol_sq_times_h2=lattice.covolume_sq(g.gram),
        restricted_order=len(restrictions),
    )


def leaf_group(g: CrystGroup, w, u: ImmutableMatrix) -> LeafData:
    """G_W(u): elements (A, v̄_A + ℓ) with (A − Id)u + v̄_A + ℓ ∈ W."""
    pd = perp_data(g, w)
    u = ImmutableMatrix(u)
    witnesses = []
    for a, v in g.elements():
        ell = pd.lift_into_w(ImmutableMatrix((a - identity(g.n)) * u + v))
        if ell is not None:
            witnesses.append((a, ell))
    log.debug(f"leaf through {list(u)}: holonomy of size {len(witnesses)}")
    return _leaf_from_witnesses(g, pd, u, witnesses)


def principal_leaf(g: CrystGroup, w) -> LeafData:
    """Leaf data shared by all principal leaves: A|_{W⊥} = Id and v̄_A ∈ W + ℤⁿ."""
    pd = perp_data(g, w)
    witnesses = []
    for a, v in g.elements():
        if not pd.fixes_perp(a):
            continue
        ell = pd.lift_into_w(v)
        if ell is not None:
            witnesses.append((a, ell))
    return _leaf_from_witnesses(g, pd, None, witnesses)


def same_leaf(g: CrystGroup, w, u: ImmutableMatrix, u_other: ImmutableMatrix) -> bool:
    pd = perp_data(g, w)
    u, u_other = ImmutableMatrix(u), ImmutableMatrix(u_other)
    return any(pd.lift_into_w(ImmutableMatrix(a * u + v - u_other)) is not None for a, v in g.elements())


def classify_leaf(g: CrystGroup, w, u: ImmutableMatrix) -> LeafClass:
    """
    Principal iff every holonomy element fixes W⊥ pointwise. Exceptional
    leaves are covered by principal ones with index sqrt(vol²_principal / vol²_u).
    """
    require_bieberbach(g)
    pd = perp_data(g, w)
    leaf = leaf_group(g, pd.w, u)
    if all(pd.fixes_perp(a) for a in leaf.holonomy()):
        return LeafClass(principal=True)
    principal = principal_leaf(g, pd.w)
    ratio = principal.vol_sq / leaf.vol_sq
    index = sqrt(ratio)
    if not index.is_Integer or index < 2:
        raise ArithmeticError(f"covering index sqrt({ratio}) is not an integer >= 2")
    return LeafClass(principal=False, index=int(index))


def sample_leaf_points(n: int, count: int = 30, seed: int = 0, max_denominator: int = 12) -> List[ImmutableMatrix]:
    """The quarter grid of [0,1)ⁿ, topped up with seeded random rational points."""
    points = [
        ImmutableMatrix(n, 1, [Rational(c, 4) for c in coords])
        for coords in itertools.product(range(4), repeat=n)
    ]
    rng = np.random.default_rng(seed)
    while len(points) < count:
        dens = rng.integers(1, max_denominator + 1, size=n)
        nums = [int(rng.integers(0, d)) for d in dens]
        points.append(ImmutableMatrix(n, 1, [Rational(p, int(d)) for p, d in zip(nums, dens)]))
    return points


def leaves_uniform(g: CrystGroup, w, points: Sequence[ImmutableMatrix]) -> bool:
    """
    True when every sampled leaf has the same vol² and the same holonomy,
    made only of elements fixing W⊥ pointwise.
    """
    pd = perp_data(g, w)
    leaves = [leaf_group(g, pd.w, u) for u in points]
    if not leaves:
        return True
    first = leaves[0]
    for leaf in leaves:
        if leaf.vol_sq != first.vol_sq or leaf.holonomy() != first.holonomy():
            return False
        if not all(pd.fixes_perp(a) for a in leaf.holonomy()):
            return False
    return True
