"""
L-closure of a subspace given over a real number field.

The closure Ŵ is the smallest rational subspace containing W. It is spanned
by the coefficient vectors of W's basis in powers of α, and splits as
Ŵ = W ⊕ K with K the G-orthogonal complement of W inside Ŵ.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import List, Union

import numpy as np
from sympy import ImmutableMatrix

from ..errors import FieldMismatch
from ..ratcore import nf_components
from .gram import GramForm
from .lattices import Sublattice, flag_adapted_basis, projected_lattice, subspace_lattice
from .subspaces import AlgSubspace, RatSubspace, as_algebraic

log = logging.getLogger("latgeo")


@dataclass(frozen=True)
class AdaptedBasis:
    """ℤ-basis (w_j, v_a, u_λ) of ℤⁿ: w spans W ∩ ℚⁿ, w + v spans Ŵ."""

    w: List[ImmutableMatrix]
    v: List[ImmutableMatrix]
    u: List[ImmutableMatrix]

    def all_vectors(self) -> List[ImmutableMatrix]:
        return self.w + self.v + self.u


@dataclass(frozen=True)
class ClosureResult:
    source: AlgSubspace
    what: RatSubspace
    k_part: AlgSubspace
    w_rational: RatSubspace
    w_lattice: Sublattice
    adapted: AdaptedBasis
    quotient_lattice: Sublattice

    def to_document(self) -> dict:
        return {
            "closure": self.what.to_document()["basis"],
            "k_part": self.k_part.to_document()["basis_nf"],
            "w_rational": self.w_rational.to_document()["basis"],
            "w_lattice": self.w_lattice.to_document()["basis"],
            "adapted_basis": {
                part: [[str(e) for e in v] for v in getattr(self.adapted, part)] for part in ("w", "v", "u")
            },
            "quotient_lattice": self.quotient_lattice.to_document()["basis"],
        }


def _k_part(w: AlgSubspace, what: RatSubspace, gram: GramForm) -> AlgSubspace:
    field = w.field
    if w.dim == 0 or what.dim == 0:
        return AlgSubspace.from_rational(what, field)
    rational_rows = what.vectors()
    g_rows = [gram.matrix * r for r in rational_rows]
    # constraint (b, i): <b, r_i>_G = 0 for every basis vector b of W
    constraints = []
    for b in w.basis:
        row = []
        for g_r in g_rows:
            acc = field.zero()
            for p in range(w.n):
                if g_r[p] != 0:
                    acc = acc + b[p].scale(g_r[p])
            row.append(acc)
        constraints.append(row)
    reduced = AlgSubspace.span(field, constraints, len(rational_rows))
    coefficient_vectors = reduced.annihilator()
    vectors = []
    for c in coefficient_vectors:
        x = [field.zero() for _ in range(w.n)]
        for c_i, r in zip(c, rational_rows):
            x = [x_p + c_i.scale(r[p]) for p, x_p in enumerate(x)]
        vectors.append(x)
    return AlgSubspace.span(field, vectors, w.n)


def l_closure(w: Union[AlgSubspace, RatSubspace], gram: GramForm) -> ClosureResult:
    """Ŵ, K, ℤⁿ ∩ Ŵ and a three-block adapted ℤ-basis for a subspace W."""
    w = as_algebraic(w)
    field, n = w.field, w.n
    if gram.n != n:
        raise ValueError(f"Gram form of size {gram.n} for a subspace of R^{n}")

    components = [c for v in w.basis for c in nf_components(v, field)]
    what = RatSubspace.span(components, n)

    covectors = [c for phi in w.annihilator() for c in nf_components(phi, field)]
    w_rational = RatSubspace.from_annihilator(covectors, n)

    hat_alg = AlgSubspace.from_rational(what, field)
    for v in w.basis:
        if not hat_alg.contains(v):
            raise FieldMismatch(f"closure of {w} does not contain {v}")

    k_part = _k_part(w, what, gram)
    if k_part.dim + w.dim != what.dim:
        raise ArithmeticError(f"dim K = {k_part.dim} does not complement dim W = {w.dim} in dim Ŵ = {what.dim}")

    w_lattice, _ = subspace_lattice(what)
    basis = flag_adapted_basis([w_rational, what])
    r, k = w_rational.dim, what.dim
    adapted = AdaptedBasis(w=basis[:r], v=basis[r:k], u=basis[k:])
    quotient = projected_lattice(what.orthogonal_complement(gram), gram)

    log.info(f"closure: dim W={w.dim}, dim W∩Q^n={r}, dim Ŵ={k}, dim K={k_part.dim}")
    return ClosureResult(
        source=w,
        what=what,
        k_part=k_part,
        w_rational=w_rational,
        w_lattice=w_lattice,
        adapted=adapted,
        quotient_lattice=quotient,
    )


def closure_density_defect(result: ClosureResult, gram: GramForm, samples: int = 50, height: int = 40, seed: int = 0) -> float:
    """
    Largest distance from a random point of a unit cell of K to the projection
    of ℤⁿ ∩ Ŵ into K, using lattice vectors of height at most `height`.
    """
    if result.k_part.dim == 0:
        return 0.0
    g = np.array(gram.matrix.tolist(), dtype=float)
    k_basis = result.k_part.float_basis()
    projector = k_basis.T @ np.linalg.solve(k_basis @ g @ k_basis.T, k_basis @ g)

    lattice_basis = np.array(result.w_lattice.basis_matrix().tolist(), dtype=float)
    steps = np.arange(-height, height + 1)
    coeffs = np.array(list(itertools.product(steps, repeat=lattice_basis.shape[0])), dtype=float)
    projected = (coeffs @ lattice_basis) @ projector.T

    rng = np.random.default_rng(seed)
    targets = rng.random((samples, k_basis.shape[0])) @ k_basis
    worst = 0.0
    for target in targets:
        diff = projected - target
        dist_sq = np.einsum("ij,jk,ik->i", diff, g, diff)
        worst = max(worst, float(np.sqrt(dist_sq.min())))
    return worst
