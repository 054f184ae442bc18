"""
Discrete subgroups of ℚⁿ and ℤ-bases adapted to rational subspaces.

A Sublattice is stored as (1/denominator)·rowspan_ℤ(rows) with the integer
rows in Hermite normal form and the denominator reduced, which makes the
representation canonical.
"""

import logging
from dataclasses import dataclass
from math import gcd
from typing import List, Optional, Sequence, Tuple

from sympy import ImmutableMatrix, Matrix, Rational, floor

from ..ratcore import (
    common_denominator,
    determinant_int,
    hnf,
    identity,
    snf,
    stack_rows,
)
from .gram import GramForm
from .subspaces import RatSubspace

log = logging.getLogger("latgeo")


@dataclass(frozen=True)
class Sublattice:
    n: int
    rows: Tuple[Tuple[int, ...], ...]
    denominator: int = 1

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def basis(self) -> List[ImmutableMatrix]:
        d = self.denominator
        return [ImmutableMatrix(self.n, 1, [Rational(x, d) for x in row]) for row in self.rows]

    def basis_matrix(self) -> ImmutableMatrix:
        """Basis vectors as rows of a rank×n rational matrix."""
        return stack_rows(self.basis, self.n)

    @property
    def _pivots(self) -> List[int]:
        return [next(j for j, x in enumerate(row) if x != 0) for row in self.rows]

    def contains(self, t: ImmutableMatrix) -> bool:
        return lattice_membership(t, self) is not None

    def span(self) -> RatSubspace:
        return RatSubspace.span(self.basis, self.n)

    def covolume_sq(self, gram: GramForm) -> Rational:
        """Squared covolume det(B G Bᵀ) inside the lattice's own span."""
        if self.rank == 0:
            return Rational(1)
        return gram.restricted(self.basis_matrix()).det()

    def coordinates(self, t: ImmutableMatrix) -> ImmutableMatrix:
        """Rational coefficients of t in the basis; t must lie in the span."""
        target = [Rational(e) * self.denominator for e in t]
        coeffs = []
        for row, p in zip(self.rows, self._pivots):
            c = target[p] / row[p]
            coeffs.append(c)
            target = [x - c * y for x, y in zip(target, row)]
        if any(x != 0 for x in target):
            raise ValueError("vector is not in the span of the lattice")
        return ImmutableMatrix(len(coeffs), 1, coeffs)

    def reduce(self, t: ImmutableMatrix) -> ImmutableMatrix:
        """Canonical representative of t modulo the lattice (t in its span)."""
        coeffs = self.coordinates(t)
        out = Matrix(t)
        for c, b in zip(coeffs, self.basis):
            out -= floor(c) * b
        return ImmutableMatrix(out)

    def index_in(self, other: "Sublattice") -> int:
        """[other : self] for a full-rank sublattice self of other."""
        if self.rank != other.rank:
            raise ValueError("index needs lattices of equal rank")
        if self.rank == 0:
            return 1
        change = [[other.coordinates(b)[i] for i in range(other.rank)] for b in self.basis]
        if any(not x.is_integer for row in change for x in row):
            raise ValueError("lattice is not contained in the other lattice")
        return abs(determinant_int([[int(x) for x in row] for row in change]))

    def to_document(self) -> dict:
        return {"basis": [[str(e) for e in b] for b in self.basis]}

    def __repr__(self) -> str:
        return f"Sublattice(n={self.n}, rows={self.rows}, denominator={self.denominator})"


def _normalized(n: int, int_rows: List[List[int]], denominator: int) -> Sublattice:
    rows = [tuple(r) for r in int_rows if any(x != 0 for x in r)]
    g = denominator
    for r in rows:
        for x in r:
            g = gcd(g, x)
    g = g or 1
    return Sublattice(n, tuple(tuple(x // g for x in r) for r in rows), denominator // g)


def _scaled_int_rows(gens: Sequence[ImmutableMatrix]) -> Tuple[List[List[int]], int]:
    d = common_denominator(e for v in gens for e in v)
    return [[int(Rational(e) * d) for e in v] for v in gens], d


def sublattice_from_generators(gens: Sequence[ImmutableMatrix], n: Optional[int] = None) -> Sublattice:
    """ℤ-span of finitely many rational vectors, with an HNF basis."""
    if not gens:
        if n is None:
            raise ValueError("cannot infer the dimension of an empty generator list")
        return Sublattice(n, ())
    n = gens[0].rows
    rows, d = _scaled_int_rows(gens)
    h, _ = hnf(rows)
    return _normalized(n, h, d)


def lattice_membership(t: ImmutableMatrix, lattice: Sublattice) -> Optional[Tuple[int, ...]]:
    """Integer coordinates of t in the lattice basis, or None when t is not in the lattice."""
    if t.rows != lattice.n:
        raise ValueError(f"vector of length {t.rows} against a lattice in dimension {lattice.n}")
    target = [Rational(e) * lattice.denominator for e in t]
    coeffs = []
    for row, p in zip(lattice.rows, lattice._pivots):
        c = target[p] / row[p]
        if not c.is_integer:
            return None
        coeffs.append(int(c))
        if c:
            target = [x - c * y for x, y in zip(target, row)]
    if any(x != 0 for x in target):
        return None
    return tuple(coeffs)


def preimage_in_generators(t: ImmutableMatrix, gens: Sequence[ImmutableMatrix]) -> Optional[Tuple[int, ...]]:
    """
    Integer coefficients m with t = Σ m_i gens_i, or None.
    Used to turn lattice membership into an explicit witness.
    """
    if not gens:
        return () if all(e == 0 for e in t) else None
    rows, d = _scaled_int_rows(list(gens) + [t])
    rows = rows[:-1]
    scaled_t = [int(Rational(e) * d) for e in t]
    h, u = hnf(rows)
    coeffs = [0] * len(gens)
    residual = scaled_t
    for j, row in enumerate(h):
        if not any(row):
            break
        p = next(k for k, x in enumerate(row) if x != 0)
        if residual[p] % row[p]:
            return None
        c = residual[p] // row[p]
        residual = [x - c * y for x, y in zip(residual, row)]
        coeffs = [x + c * y for x, y in zip(coeffs, u[j])]
    if any(residual):
        return None
    return tuple(coeffs)


def solve_unique(m: Matrix, b: ImmutableMatrix) -> ImmutableMatrix:
    """The unique x with m x = b (m of full column rank, b in its image)."""
    solution, params = Matrix(m).gauss_jordan_solve(Matrix(b))
    if params.rows:
        raise ValueError("linear system has no unique solution")
    return ImmutableMatrix(solution)


def _inverse_unimodular(v: List[List[int]]) -> List[List[int]]:
    inv = Matrix(v).inv()
    return [[int(inv[i, j]) for j in range(inv.cols)] for i in range(inv.rows)]


def adapted_zbasis(w: RatSubspace) -> List[ImmutableMatrix]:
    """
    A ℤ-basis of ℤⁿ whose first dim(W) vectors are a basis of ℤⁿ ∩ W.

    With U·B·V = [D | 0] for an integer basis B of W, the rows of V⁻¹ are
    unimodular and the first k of them span W.
    """
    n, k = w.n, w.dim
    if k == 0:
        return [ImmutableMatrix(identity(n).col(j)) for j in range(n)]
    rows, _ = _scaled_int_rows(w.vectors())
    _, _, v = snf(rows)
    v_inv = _inverse_unimodular(v)
    head, _ = hnf(v_inv[:k])
    basis = [list(r) for r in head] + v_inv[k:]
    return [ImmutableMatrix(n, 1, row) for row in basis]


def subspace_lattice(w: RatSubspace) -> Tuple[Sublattice, bool]:
    """ℤⁿ ∩ W by saturation, and whether it spans W (always true for rational W)."""
    if w.dim == 0:
        return Sublattice(w.n, ()), True
    saturated = adapted_zbasis(w)[: w.dim]
    lattice = sublattice_from_generators(saturated)
    l_generated = lattice.rank == w.dim
    if not l_generated:
        log.warning(f"saturation of {w} has rank {lattice.rank} < {w.dim}")
    return lattice, l_generated


def flag_adapted_basis(flag: Sequence[RatSubspace]) -> List[ImmutableMatrix]:
    """
    ℤ-basis of ℤⁿ adapted to a chain W_1 ⊆ W_2 ⊆ ... : for every i the
    first dim(W_i) vectors form a basis of ℤⁿ ∩ W_i.
    """
    if not flag:
        raise ValueError("empty flag")
    n = flag[0].n
    for smaller, larger in zip(flag, flag[1:]):
        if not smaller.is_subspace_of(larger):
            raise ValueError("flag is not increasing")
    basis = adapted_zbasis(flag[-1])
    top = flag[-1].dim
    for level in reversed(flag[:-1]):
        if level.dim == 0 or level.dim == top:
            continue
        outer = basis[:top]
        # coordinates of the smaller level inside the outer ℤ-basis
        coords = Matrix.hstack(*outer)
        sub_vectors = [solve_unique(coords, v) for v in level.vectors()]
        inner = adapted_zbasis(RatSubspace.span(sub_vectors, top))
        basis = [ImmutableMatrix(coords * c) for c in inner] + basis[top:]
        top = level.dim
    return basis


def projected_lattice(s: RatSubspace, gram: GramForm) -> Sublattice:
    """P_S(ℤⁿ) for the G-orthogonal projection P_S onto S."""
    if s.dim == 0:
        return Sublattice(s.n, ())
    p = s.projector(gram)
    lattice = sublattice_from_generators([ImmutableMatrix(p.col(j)) for j in range(s.n)])
    if lattice.rank != s.dim:
        raise ArithmeticError(f"projected lattice has rank {lattice.rank}, expected {s.dim}")
    return lattice
