"""
Fixed spaces of holonomy elements, the torsion test and invariant complements.
"""

import logging
from itertools import product
from dataclasses import dataclass
from typing import List, Optional

from sympy import ImmutableMatrix, Matrix, Rational

from ..errors import NotBieberbach, NotInvariant
from ..latgeo import RatSubspace, preimage_in_generators
from ..ratcore import identity, reduce_mod1, to_int_rows, unit_vec
from .group import CrystGroup

log = logging.getLogger("crysgroup")


@dataclass(frozen=True)
class FixedData:
    a: ImmutableMatrix
    order: int
    kernel: RatSubspace
    image: RatSubspace
    projector: ImmutableMatrix


@dataclass(frozen=True)
class TorsionVerdict:
    torsion_free: bool
    element: Optional[ImmutableMatrix] = None
    lattice_shift: Optional[ImmutableMatrix] = None
    fixed_point: Optional[ImmutableMatrix] = None

    def to_document(self) -> dict:
        if self.torsion_free:
            return {"torsion_free": True}
        return {
            "torsion_free": False,
            "witness": {
                "matrix": to_int_rows(self.element),
                "lattice_shift": [str(e) for e in self.lattice_shift],
                "fixed_point": [str(e) for e in self.fixed_point],
            },
        }


def element_order(a: ImmutableMatrix, limit: int = 10000) -> int:
    ident = identity(a.rows)
    power, k = ImmutableMatrix(a), 1
    while power != ident:
        power = ImmutableMatrix(power * a)
        k += 1
        if k > limit:
            raise ArithmeticError(f"{a.tolist()} has no finite order below {limit}")
    return k


def averaging_projector(a: ImmutableMatrix) -> ImmutableMatrix:
    """(1/k)·Σ_{j<k} A^j, the projector onto ker(A − Id) along Im(A − Id)."""
    k = element_order(a)
    total, power = Matrix.zeros(a.rows, a.rows), identity(a.rows)
    for _ in range(k):
        total += power
        power = ImmutableMatrix(power * a)
    return ImmutableMatrix(total / k)


def particular_solution(m: ImmutableMatrix, b: ImmutableMatrix) -> Optional[ImmutableMatrix]:
    """Some x with m x = b (free parameters set to zero), or None."""
    try:
        solution, params = Matrix(m).gauss_jordan_solve(Matrix(b))
    except ValueError:
        return None
    return ImmutableMatrix(solution.subs({p: 0 for p in params}))


def fixed_data(g: CrystGroup, a: ImmutableMatrix) -> FixedData:
    a = ImmutableMatrix(a)
    g.index_of(a)
    shifted = ImmutableMatrix(a - identity(g.n))
    kernel = RatSubspace.kernel_of(shifted)
    projector = averaging_projector(a)
    if projector != kernel.projector(g.gram):
        raise ArithmeticError(f"averaging projector of {a.tolist()} is not G-orthogonal")
    return FixedData(
        a=a,
        order=element_order(a),
        kernel=kernel,
        image=RatSubspace.image_of(shifted),
        projector=projector,
    )


def solve_in_image(a: ImmutableMatrix, b: ImmutableMatrix) -> ImmutableMatrix:
    """S_A(b): the unique x ∈ Im(A − Id) with (A − Id)x = b."""
    x = particular_solution(ImmutableMatrix(a - identity(a.rows)), b)
    if x is None:
        raise ValueError(f"{list(b)} is not in the image of A - Id")
    return ImmutableMatrix((identity(a.rows) - averaging_projector(a)) * x)


def is_torsion_free(g: CrystGroup) -> TorsionVerdict:
    """
    (A, v̄_A + ℓ) has a fixed point iff P_ker(v̄_A + ℓ) = 0, so the group has
    torsion iff −P_ker v̄_A ∈ P_ker(ℤⁿ) for some A ≠ Id.
    """
    for a, v in g.nontrivial_elements():
        p = averaging_projector(a)
        gens = [ImmutableMatrix(p * unit_vec(g.n, i)) for i in range(g.n)]
        coeffs = preimage_in_generators(ImmutableMatrix(-p * v), gens)
        if coeffs is None:
            continue
        shift = ImmutableMatrix(g.n, 1, list(coeffs))
        # (A - Id)x = -(v̄_A + ℓ) makes x a fixed point of (A, v̄_A + ℓ)
        x = particular_solution(ImmutableMatrix(a - identity(g.n)), ImmutableMatrix(-(v + shift)))
        log.info(f"torsion element {a.tolist()} with shift {list(shift)}")
        return TorsionVerdict(False, a, shift, x)
    return TorsionVerdict(True)


def torus_action(g: CrystGroup, a: ImmutableMatrix, x: ImmutableMatrix) -> ImmutableMatrix:
    """(A, x) ↦ A·x + v̄_A mod ℤⁿ."""
    return reduce_mod1(ImmutableMatrix(a * x + g.translation(a)))


def check_invariant(g: CrystGroup, w: RatSubspace) -> None:
    for a in g.point_group:
        if not w.is_invariant(a):
            raise NotInvariant(f"{w} is not preserved by {a.tolist()}")


def invariant_complement(g: CrystGroup, w: RatSubspace) -> RatSubspace:
    """Kernel of the H-average of the coordinate projection onto W."""
    check_invariant(g, w)
    n = g.n
    if w.dim in (0, n):
        return RatSubspace.full(n) if w.dim == 0 else RatSubspace.zero(n)
    selector = ImmutableMatrix(w.dim, n, lambda i, j: 1 if j == w.pivots[i] else 0)
    projection = ImmutableMatrix(w.basis.T * selector)
    total = Matrix.zeros(n, n)
    for a in g.point_group:
        total += a * projection * Matrix(a).inv()
    averaged = ImmutableMatrix(total * Rational(1, g.order))
    complement = RatSubspace.kernel_of(averaged)
    if complement.dim + w.dim != n or complement.intersection(w).dim != 0:
        raise ArithmeticError("averaged projection does not split off W")
    return complement


def fixed_point_oracle(g: CrystGroup, radius: int = 3) -> List[tuple]:
    """
    Brute force: every (A, v̄_A + ℓ) with |ℓ|∞ ≤ radius that has a fixed point.
    Used to cross-check the projector test.
    """
    found = []
    for a, v in g.nontrivial_elements():
        for shift in product(range(-radius, radius + 1), repeat=g.n):
            t = ImmutableMatrix(v + ImmutableMatrix(g.n, 1, list(shift)))
            if particular_solution(ImmutableMatrix(a - identity(g.n)), ImmutableMatrix(-t)) is not None:
                found.append((a, shift))
    return found


def require_bieberbach(g: CrystGroup) -> None:
    verdict = is_torsion_free(g)
    if not verdict.torsion_free:
        raise NotBieberbach(f"group has torsion: {verdict.element.tolist()} fixes {list(verdict.fixed_point)}")
