"""
The union of exceptional leaves as finitely many affine strata.

For A with A|_{W⊥} ≠ Id the leaves through u with (A − Id)u + v̄_A + ℓ ∈ W
form the affine family offset + (A − Id)⁻¹(W), one family for every ℓ in
ℓ₀ + Λ_A. The offsets move along a periodicity lattice, so each stratum is
listed once together with that lattice.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import List, Tuple

from sympy import ImmutableMatrix

from ..crysgroup import CrystGroup, averaging_projector, solve_in_image
from ..latgeo import (
    RatSubspace,
    Sublattice,
    preimage_in_generators,
    sublattice_from_generators,
    subspace_lattice,
)
from ..ratcore import identity, to_int_rows, unit_vec
from .leaves import PerpData, perp_data

log = logging.getLogger("foliate")


@dataclass(frozen=True)
class SingularStratum:
    a: ImmutableMatrix
    direction: RatSubspace
    offset: ImmutableMatrix
    offset_lattice: Sublattice
    # P⊥ applied to Λ_A, the lattice shifts keeping the stratum equation solvable
    shift_lattice: Sublattice = field(repr=False)
    # (Id − P_ker) P⊥ ℤⁿ, how ℤⁿ moves the offsets
    moduli: Sublattice = field(repr=False)
    perp_projector: ImmutableMatrix = field(repr=False)

    def contains(self, u: ImmutableMatrix) -> bool:
        n = self.a.rows
        t = ImmutableMatrix(-self.perp_projector * (self.a - identity(n)) * (ImmutableMatrix(u) - self.offset))
        return self.shift_lattice.contains(t)

    def representatives(self) -> List[ImmutableMatrix]:
        """Offsets of the stratum modulo the action of ℤⁿ."""
        start = self.moduli.reduce(self.offset)
        seen = {start}
        queue = deque([start])
        steps = self.offset_lattice.basis
        while queue:
            x = queue.popleft()
            for b in steps:
                for y in (x + b, x - b):
                    y = self.moduli.reduce(ImmutableMatrix(y))
                    if y not in seen:
                        seen.add(y)
                        queue.append(y)
        return sorted(seen, key=lambda v: tuple(v))

    def to_document(self) -> dict:
        return {
            "matrix": to_int_rows(self.a),
            "direction": self.direction.to_document()["basis"],
            "offset": [str(e) for e in self.offset],
            "offset_lattice": [[str(e) for e in b] for b in self.offset_lattice.basis],
            "representatives": [[str(e) for e in r] for r in self.representatives()],
        }


@dataclass(frozen=True)
class SingularLocus:
    strata: Tuple[SingularStratum, ...]
    complete: bool = True

    @property
    def is_empty(self) -> bool:
        return not self.strata

    def contains(self, u: ImmutableMatrix) -> bool:
        return any(s.contains(u) for s in self.strata)

    def representatives(self) -> List[Tuple[ImmutableMatrix, ImmutableMatrix]]:
        return [(s.a, r) for s in self.strata for r in s.representatives()]

    def to_document(self) -> dict:
        return {"complete": self.complete, "strata": [s.to_document() for s in self.strata]}


def _stratum(g: CrystGroup, pd: PerpData, a: ImmutableMatrix, v: ImmutableMatrix):
    n = g.n
    ident = identity(n)
    p_perp = pd.projector
    p_ker = averaging_projector(a)
    q = ImmutableMatrix(p_ker * p_perp)

    coeffs = preimage_in_generators(ImmutableMatrix(-q * v), [ImmutableMatrix(q * unit_vec(n, i)) for i in range(n)])
    if coeffs is None:
        return None
    ell0 = ImmutableMatrix(n, 1, list(coeffs))

    solutions, _ = subspace_lattice(RatSubspace.kernel_of(q))
    offset = ImmutableMatrix(-solve_in_image(a, ImmutableMatrix(p_perp * (v + ell0))))
    periods = [solve_in_image(a, ImmutableMatrix(p_perp * lam)) for lam in solutions.basis]
    shifts = [ImmutableMatrix(p_perp * lam) for lam in solutions.basis]
    moduli = [ImmutableMatrix((ident - p_ker) * p_perp * unit_vec(n, i)) for i in range(n)]

    return SingularStratum(
        a=a,
        direction=RatSubspace.kernel_of(ImmutableMatrix(p_perp * (a - ident))),
        offset=offset,
        offset_lattice=sublattice_from_generators(periods, n),
        shift_lattice=sublattice_from_generators(shifts, n),
        moduli=sublattice_from_generators(moduli, n),
        perp_projector=p_perp,
    )


def singular_leaf_locus(g: CrystGroup, w) -> SingularLocus:
    pd = perp_data(g, w)
    strata = []
    for a, v in g.nontrivial_elements():
        if pd.fixes_perp(a):
            continue
        stratum = _stratum(g, pd, a, v)
        if stratum is None:
            continue
        if stratum.direction.dim >= g.n:
            raise ArithmeticError(f"stratum of {a.tolist()} is not a proper subspace")
        strata.append(stratum)
    log.info(f"singular locus along {pd.w}: {len(strata)} strata")
    return SingularLocus(tuple(strata))
