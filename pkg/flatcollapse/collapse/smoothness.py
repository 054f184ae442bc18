"""
Smoothness of the collapsed orbifold W⊥/π⊥.

The limit is singular exactly when some (A, v) with A|_{W⊥} ≠ Id has
P_{W⊥}(v) ∈ Im(A − Id), i.e. v ∈ W + Im(A − Id). This is decided by
projecting onto the G-orthogonal complement of W + Im(A − Id).
"""

import logging
from dataclasses import dataclass
from typing import Optional

from sympy import ImmutableMatrix

from ..crysgroup import CrystGroup, check_invariant, require_bieberbach, solve_in_image
from ..latgeo import RatSubspace, preimage_in_generators, require_rational
from ..ratcore import identity, to_int_rows, unit_vec

log = logging.getLogger("collapse")


@dataclass(frozen=True)
class SmoothnessVerdict:
    smooth: bool
    element: Optional[ImmutableMatrix] = None
    lattice_shift: Optional[ImmutableMatrix] = None
    leaf_point: Optional[ImmutableMatrix] = None

    def to_document(self) -> dict:
        if self.smooth:
            return {"smooth": True}
        return {
            "smooth": False,
            "witness": {
                "matrix": to_int_rows(self.element),
                "lattice_shift": [str(e) for e in self.lattice_shift],
                "leaf_point": [str(e) for e in self.leaf_point],
            },
        }


def is_smooth(g: CrystGroup, w) -> SmoothnessVerdict:
    require_bieberbach(g)
    w = require_rational(w)
    check_invariant(g, w)
    n = g.n
    ident = identity(n)
    p_perp = w.orthogonal_complement(g.gram).projector(g.gram)

    for a, v in g.nontrivial_elements():
        if all(e == 0 for e in (a - ident) * p_perp):
            continue
        s = w.sum(RatSubspace.image_of(ImmutableMatrix(a - ident)))
        q = s.orthogonal_complement(g.gram).projector(g.gram)
        coeffs = preimage_in_generators(ImmutableMatrix(-q * v), [ImmutableMatrix(q * unit_vec(n, i)) for i in range(n)])
        if coeffs is None:
            continue
        shift = ImmutableMatrix(n, 1, list(coeffs))
        # a point u with (A - Id)u + v + ℓ ∈ W lies on an exceptional leaf
        u = ImmutableMatrix(-solve_in_image(a, ImmutableMatrix(p_perp * (v + shift))))
        log.info(f"collapse along {w} is singular at {a.tolist()}")
        return SmoothnessVerdict(False, a, shift, u)
    return SmoothnessVerdict(True)
