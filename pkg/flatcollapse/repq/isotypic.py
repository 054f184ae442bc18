"""
Rational isotypic decomposition of the holonomy representation.

Class sums span the centre of ℚH, so the joint rational spectral
decomposition of the class-sum operators separates exactly the isotypic
components. Only the split of a component into irreducible summands of
equal dimension relies on a bounded probe search.
"""

import itertools
import logging
from dataclasses import dataclass, replace
from typing import Iterator, List, Optional, Sequence, Tuple

from sympy import ImmutableMatrix, Matrix

from ..config import get_toolkit_config
from ..crysgroup import CrystGroup
from ..errors import BudgetLimited, ValidationFailed
from ..latgeo import RatSubspace, subspace_lattice
from ..ratcore import X, factor_over_Q

log = logging.getLogger("repq")


@dataclass(frozen=True)
class IsotypicComponent:
    """One isotypic component; irreducible_dim and multiplicity are None while undetermined."""

    space: RatSubspace
    irreducible_dim: Optional[int] = None
    multiplicity: Optional[int] = None
    certified: bool = False

    @property
    def determined(self) -> bool:
        return self.irreducible_dim is not None

    def to_document(self) -> dict:
        return {
            "basis": self.space.to_document()["basis"],
            "irreducible_dim": self.irreducible_dim if self.determined else "undetermined",
            "multiplicity": self.multiplicity if self.determined else "undetermined",
            "certified": self.certified,
        }


def _sort_key(space: RatSubspace):
    return space.dim, space.pivots, tuple(str(e) for e in space.basis)


def conjugacy_classes(g: CrystGroup) -> List[List[ImmutableMatrix]]:
    inverses = [ImmutableMatrix(Matrix(b).inv()) for b in g.point_group]
    classes, assigned = [], set()
    for a in g.point_group:
        if a in assigned:
            continue
        members = []
        for b, b_inv in zip(g.point_group, inverses):
            c = ImmutableMatrix(b * a * b_inv)
            if c not in members:
                members.append(c)
        assigned.update(members)
        classes.append(sorted(members, key=g.index_of))
    return classes


def class_sums(g: CrystGroup) -> List[ImmutableMatrix]:
    sums = []
    for members in conjugacy_classes(g):
        total = Matrix.zeros(g.n, g.n)
        for a in members:
            total += a
        sums.append(ImmutableMatrix(total))
    return sums


def _splitting_operators(g: CrystGroup) -> List[ImmutableMatrix]:
    """The class sums plus a few fixed linear combinations of them."""
    sums = class_sums(g)
    combos = []
    for j in range(1, 4):
        total = Matrix.zeros(g.n, g.n)
        for k, c in enumerate(sums):
            total += (j + 1) ** k * c
        combos.append(ImmutableMatrix(total))
    return sums + combos


def _evaluate(poly, m: ImmutableMatrix) -> ImmutableMatrix:
    result = Matrix.zeros(m.rows, m.rows)
    for c in poly.all_coeffs():
        result = result * m + c * Matrix.eye(m.rows)
    return ImmutableMatrix(result)


def isotypic_decomposition(g: CrystGroup, degcap: Optional[int] = None) -> List[IsotypicComponent]:
    n = g.n
    if n == 0:
        return []
    spaces = [RatSubspace.full(n)]
    for op in _splitting_operators(g):
        factorization = factor_over_Q(Matrix(op).charpoly(X).all_coeffs(), degcap)
        kernels = [RatSubspace.kernel_of(_evaluate(f ** mult, op)) for f, mult in factorization.factors]
        refined = []
        for space in spaces:
            for kernel in kernels:
                piece = space.intersection(kernel)
                if piece.dim:
                    refined.append(piece)
        spaces = refined

    spaces.sort(key=_sort_key)
    if sum(s.dim for s in spaces) != n:
        raise ValidationFailed("isotypic components do not span the whole space")
    for s in spaces:
        for a in g.point_group:
            if not s.is_invariant(a):
                raise ValidationFailed(f"component {s} is not invariant under {a.tolist()}")
    log.info(f"isotypic decomposition: dims {[s.dim for s in spaces]}")
    return [IsotypicComponent(space=s) for s in spaces]


# ---------- Probing for irreducible summands ----------

def cyclic_module(g: CrystGroup, v: ImmutableMatrix) -> RatSubspace:
    """span{A·v : A ∈ H}."""
    return RatSubspace.span([ImmutableMatrix(a * v) for a in g.point_group], g.n)


def _shell(support: Tuple[int, ...], rank: int, height: int) -> Iterator[Tuple[int, ...]]:
    """Vectors supported exactly on `support` with max |c| = height and positive leading entry."""
    nonzero = [x for x in range(-height, height + 1) if x]
    axes = [range(1, height + 1)] + [nonzero] * (len(support) - 1)
    for values in itertools.product(*axes):
        if max(abs(x) for x in values) != height:
            continue
        c = [0] * rank
        for i, x in zip(support, values):
            c[i] = x
        yield tuple(c)


def _coefficient_vectors(rank: int, budget: int) -> Iterator[Tuple[int, ...]]:
    """
    Nonzero integer vectors of height ≤ budget with positive leading entry,
    ordered by height, then support size, then support, then value.
    Generated shell by shell so the first vectors cost O(rank).
    """
    for height in range(1, budget + 1):
        for size in range(1, rank + 1):
            for support in itertools.combinations(range(rank), size):
                yield from _shell(support, rank, height)


def probe_vectors(space: RatSubspace, budget: int) -> Iterator[ImmutableMatrix]:
    """Lattice points of ℤⁿ ∩ space in the order they are probed."""
    basis = subspace_lattice(space)[0].basis
    for coeffs in _coefficient_vectors(len(basis), budget):
        v = Matrix.zeros(space.n, 1)
        for c, b in zip(coeffs, basis):
            if c:
                v += c * b
        yield ImmutableMatrix(v)


def _shrink(g: CrystGroup, module: RatSubspace, budget: int) -> RatSubspace:
    """Replace the module by smaller cyclic submodules until no probe finds one."""
    while module.dim > 1:
        smaller = next(
            (c for c in (cyclic_module(g, v) for v in probe_vectors(module, budget)) if c.dim < module.dim),
            None,
        )
        if smaller is None:
            return module
        module = smaller
    return module


def split_isotypic(g: CrystGroup, comp: IsotypicComponent, budget: Optional[int] = None) -> IsotypicComponent:
    """
    Fill in (d, a) for one component. d is the dimension of a cyclic module
    that no probe of height ≤ budget can shrink; the result is certified only
    when d divides dim(comp).
    """
    if budget is None:
        budget = get_toolkit_config()["PROBE_BUDGET"]
    space = comp.space
    if space.dim == 1:
        return replace(comp, irreducible_dim=1, multiplicity=1, certified=True)
    first = next(probe_vectors(space, budget), None)
    if first is None:
        log.warning(f"component of dim {space.dim} left undetermined: no probes at height {budget}")
        return replace(comp, irreducible_dim=None, multiplicity=None, certified=False)
    module = _shrink(g, cyclic_module(g, first), budget)
    d = module.dim
    if space.dim % d:
        log.warning(f"component of dim {space.dim} left undetermined: probed module has dim {d}")
        return replace(comp, irreducible_dim=None, multiplicity=None, certified=False)
    return replace(comp, irreducible_dim=d, multiplicity=space.dim // d, certified=True)


def irreducible_summands(g: CrystGroup, comp: IsotypicComponent, budget: Optional[int] = None) -> List[RatSubspace]:
    """Greedy direct-sum decomposition of a certified component into d-dimensional summands."""
    if not comp.certified:
        raise BudgetLimited(f"component {comp.space} is not certified")
    if budget is None:
        budget = get_toolkit_config()["PROBE_BUDGET"]
    d = comp.irreducible_dim
    if comp.multiplicity == 1:
        return [comp.space]
    summands: List[RatSubspace] = []
    covered = RatSubspace.zero(g.n)
    for v in probe_vectors(comp.space, budget):
        if covered.contains(v):
            continue
        module = cyclic_module(g, v)
        if module.dim != d or module.intersection(covered).dim:
            continue
        summands.append(module)
        covered = covered.sum(module)
        if covered.dim == comp.space.dim:
            return summands
    raise BudgetLimited(f"only {covered.dim} of {comp.space.dim} dimensions split within height {budget}")


def decompose(g: CrystGroup, budget: Optional[int] = None, degcap: Optional[int] = None) -> List[IsotypicComponent]:
    return [split_isotypic(g, c, budget) for c in isotypic_decomposition(g, degcap)]


def blocks_of(g: CrystGroup, components: Sequence[IsotypicComponent], budget: Optional[int] = None) -> List[Tuple[int, RatSubspace]]:
    """(component index, irreducible summand) for every summand of every certified component."""
    return [(i, s) for i, c in enumerate(components) for s in irreducible_summands(g, c, budget)]
