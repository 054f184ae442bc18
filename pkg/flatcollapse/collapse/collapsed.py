"""
The collapsed crystallographic group π⊥ acting on W⊥.

Every (A, v) ∈ π maps to (A|_{W⊥}, P_{W⊥}v). The image is a crystallographic
group on W⊥ whose translation lattice L⊥ is generated by P_{W⊥}(ℤⁿ) and the
translation parts of elements acting trivially on W⊥. It is re-expressed in
the coordinates of an HNF basis of L⊥ (the chart) so that it is itself a
CrystGroup.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple, Union

from sympy import ImmutableMatrix

from ..crysgroup import CrystGroup, check_invariant, load_validate
from ..errors import ValidationFailed
from ..latgeo import (
    AlgSubspace,
    ClosureResult,
    RatSubspace,
    Sublattice,
    l_closure,
    projected_lattice,
    sublattice_from_generators,
)
from ..ratcore import identity, is_integral, rat_str, reduce_mod1, unit_vec

log = logging.getLogger("collapse")


@dataclass(frozen=True)
class CollapsedGroup:
    parent: CrystGroup
    w: RatSubspace
    w_perp: RatSubspace
    perp_projector: ImmutableMatrix
    perp_lattice: Sublattice
    chart: ImmutableMatrix
    group: CrystGroup
    kernel_elements: Tuple[ImmutableMatrix, ...]
    closure: Optional[ClosureResult] = None

    @property
    def dim(self) -> int:
        return self.group.n

    def chart_coordinates(self, x: ImmutableMatrix) -> ImmutableMatrix:
        """Coordinates in the chart basis of a vector of W⊥."""
        if self.dim == 0:
            return ImmutableMatrix(0, 1, [])
        c, g = self.chart, self.parent.gram.matrix
        return ImmutableMatrix((c * g * c.T).inv() * c * g * x)


@dataclass(frozen=True)
class CollapsedInvariants:
    holonomy_order: int
    lattice_index: int

    def to_document(self) -> dict:
        return {"holonomy_order": self.holonomy_order, "lattice_index": self.lattice_index}


def collapse_target(g: CrystGroup, w: Union[RatSubspace, AlgSubspace]) -> Tuple[RatSubspace, Optional[ClosureResult]]:
    """The rational subspace actually collapsed: W itself, or its closure Ŵ."""
    if isinstance(w, RatSubspace):
        return w, None
    if w.is_rational():
        return w.to_rational(), None
    closure = l_closure(w, g.gram)
    log.info(f"collapsing along the closure of dim {closure.what.dim} instead of dim {w.dim}")
    return closure.what, closure


def collapse(g: CrystGroup, w: Union[RatSubspace, AlgSubspace]) -> CollapsedGroup:
    w, closure = collapse_target(g, w)
    check_invariant(g, w)
    n = g.n
    ident = identity(n)

    w_perp = w.orthogonal_complement(g.gram)
    p = w_perp.projector(g.gram)
    kernel = [(a, v) for a, v in g.elements() if all(e == 0 for e in (a - ident) * p)]

    gens = [ImmutableMatrix(p * unit_vec(n, i)) for i in range(n)]
    gens += [ImmutableMatrix(p * v) for _, v in kernel]
    perp_lattice = sublattice_from_generators(gens, n)
    if perp_lattice.rank != w_perp.dim:
        raise ValidationFailed(f"L⊥ has rank {perp_lattice.rank}, W⊥ has dim {w_perp.dim}")

    m = w_perp.dim
    chart = perp_lattice.basis_matrix()
    if m == 0:
        doc = {"dim": 0, "gram": [], "generators": []}
    else:
        gram_perp = ImmutableMatrix(chart * g.gram.matrix * chart.T)
        to_chart = ImmutableMatrix(gram_perp.inv() * chart * g.gram.matrix)
        images = {}
        for a, v in g.elements():
            a_perp = ImmutableMatrix(to_chart * a * chart.T)
            if not is_integral(a_perp):
                raise ValidationFailed(f"{a.tolist()} does not preserve L⊥")
            v_perp = reduce_mod1(ImmutableMatrix(to_chart * p * v))
            known = images.get(a_perp)
            if known is None:
                images[a_perp] = v_perp
            elif known != v_perp:
                raise ValidationFailed(f"translation of {a_perp.tolist()} is not well defined mod L⊥")
        ident_perp = identity(m)
        doc = {
            "dim": m,
            "gram": [[rat_str(gram_perp[i, j]) for j in range(m)] for i in range(m)],
            "generators": [
                {
                    "matrix": [[int(a[i, j]) for j in range(m)] for i in range(m)],
                    "translation": [rat_str(e) for e in v],
                }
                for a, v in images.items()
                if a != ident_perp
            ],
        }

    group = load_validate(doc)
    if g.order % group.order:
        raise ValidationFailed(f"|H⊥| = {group.order} does not divide |H| = {g.order}")
    log.info(f"collapsed along dim {w.dim}: dim {m}, |H⊥|={group.order}, kernel elements {len(kernel)}")
    return CollapsedGroup(
        parent=g,
        w=w,
        w_perp=w_perp,
        perp_projector=p,
        perp_lattice=perp_lattice,
        chart=chart,
        group=group,
        kernel_elements=tuple(a for a, _ in kernel),
        closure=closure,
    )


def collapsed_invariants(cg: CollapsedGroup) -> CollapsedInvariants:
    projected = projected_lattice(cg.w_perp, cg.parent.gram)
    index = projected.index_in(cg.perp_lattice)
    ratio = projected.covolume_sq(cg.parent.gram) / cg.perp_lattice.covolume_sq(cg.parent.gram)
    if ratio != index ** 2:
        raise ArithmeticError(f"covolume ratio {ratio} disagrees with index {index}")
    return CollapsedInvariants(holonomy_order=cg.group.order, lattice_index=index)


def leaf_space_point(cg: CollapsedGroup, u: ImmutableMatrix) -> ImmutableMatrix:
    """Φ(u): the leaf through u as a point of W⊥ in chart coordinates."""
    return cg.chart_coordinates(ImmutableMatrix(cg.perp_projector * ImmutableMatrix(u)))


def same_orbit(cg: CollapsedGroup, x: ImmutableMatrix, y: ImmutableMatrix) -> bool:
    """Whether chart points x and y lie in one π⊥-orbit."""
    x, y = ImmutableMatrix(x), ImmutableMatrix(y)
    return any(is_integral(ImmutableMatrix(a * x + v - y)) for a, v in cg.group.elements())
