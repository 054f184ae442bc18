"""
Rational and algebraic subspaces of ℝⁿ in canonical reduced row echelon form.

Equal subspaces have identical normal forms, so both classes are
hashable values with syntactic equality.
"""

from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from sympy import ImmutableMatrix, Matrix

from ..errors import FieldMismatch, IrrationalInput
from ..ratcore import (
    RATIONALS,
    NFElem,
    NumberField,
    identity,
    nullspace_rows,
    rational_vector,
    rows_of,
    rref_rows,
    stack_rows,
)
from .gram import GramForm


def _leading_index(row: Iterable) -> int:
    for j, e in enumerate(row):
        if e != 0:
            return j
    raise ValueError("zero row in echelon basis")


@dataclass(frozen=True)
class RatSubspace:
    n: int
    basis: ImmutableMatrix

    def __post_init__(self):
        if self.basis.cols != self.n:
            raise ValueError(f"basis has {self.basis.cols} columns in R^{self.n}")

    # ---------- Construction ----------

    @classmethod
    def span(cls, vectors: Sequence[ImmutableMatrix], n: int) -> "RatSubspace":
        nonzero = [v for v in vectors if any(e != 0 for e in v)]
        if not nonzero:
            return cls.zero(n)
        reduced, pivots = Matrix(stack_rows(nonzero, n)).rref()
        return cls(n, ImmutableMatrix(reduced[: len(pivots), :]))

    @classmethod
    def from_rows(cls, rows: ImmutableMatrix) -> "RatSubspace":
        return cls.span(rows_of(rows), rows.cols)

    @classmethod
    def zero(cls, n: int) -> "RatSubspace":
        return cls(n, ImmutableMatrix(0, n, []))

    @classmethod
    def full(cls, n: int) -> "RatSubspace":
        return cls(n, identity(n))

    @classmethod
    def kernel_of(cls, m: ImmutableMatrix) -> "RatSubspace":
        """{x : m x = 0}."""
        if m.rows == 0 or all(e == 0 for e in m):
            return cls.full(m.cols)
        return cls.span([ImmutableMatrix(v) for v in Matrix(m).nullspace()], m.cols)

    @classmethod
    def image_of(cls, m: ImmutableMatrix) -> "RatSubspace":
        if m.cols == 0:
            return cls.zero(m.rows)
        return cls.span([ImmutableMatrix(m.col(j)) for j in range(m.cols)], m.rows)

    @classmethod
    def from_annihilator(cls, covectors: Sequence[ImmutableMatrix], n: int) -> "RatSubspace":
        if not covectors:
            return cls.full(n)
        return cls.kernel_of(stack_rows(covectors, n))

    # ---------- Queries ----------

    @property
    def dim(self) -> int:
        return self.basis.rows

    @property
    def pivots(self) -> Tuple[int, ...]:
        return tuple(_leading_index(self.basis.row(i)) for i in range(self.dim))

    def vectors(self) -> List[ImmutableMatrix]:
        return rows_of(self.basis)

    def contains(self, v: ImmutableMatrix) -> bool:
        residual = Matrix(v)
        for i, p in enumerate(self.pivots):
            if residual[p] != 0:
                residual -= residual[p] * self.basis.row(i).T
        return all(e == 0 for e in residual)

    def is_subspace_of(self, other: "RatSubspace") -> bool:
        return all(other.contains(v) for v in self.vectors())

    def annihilator(self) -> List[ImmutableMatrix]:
        """Covectors y (as columns) with yᵀ x = 0 exactly for x in the subspace."""
        if self.dim == 0:
            return [ImmutableMatrix(identity(self.n).col(j)) for j in range(self.n)]
        return [ImmutableMatrix(v) for v in Matrix(self.basis).nullspace()]

    def is_invariant(self, a: ImmutableMatrix) -> bool:
        return all(self.contains(a * v) for v in self.vectors())

    # ---------- Operations ----------

    def image_under(self, a: ImmutableMatrix) -> "RatSubspace":
        return RatSubspace.span([a * v for v in self.vectors()], self.n)

    def sum(self, other: "RatSubspace") -> "RatSubspace":
        return RatSubspace.span(self.vectors() + other.vectors(), self.n)

    def intersection(self, other: "RatSubspace") -> "RatSubspace":
        return RatSubspace.from_annihilator(self.annihilator() + other.annihilator(), self.n)

    def orthogonal_complement(self, gram: GramForm) -> "RatSubspace":
        if self.dim == 0:
            return RatSubspace.full(self.n)
        return RatSubspace.kernel_of(ImmutableMatrix(self.basis * gram.matrix))

    def projector(self, gram: GramForm) -> ImmutableMatrix:
        """G-orthogonal projector onto the subspace: Bᵀ (B G Bᵀ)⁻¹ B G."""
        if self.dim == 0:
            return ImmutableMatrix.zeros(self.n, self.n)
        b = self.basis
        return ImmutableMatrix(b.T * gram.restricted(b).inv() * b * gram.matrix)

    def coordinates(self, v: ImmutableMatrix) -> ImmutableMatrix:
        """Coefficients c with v = Σ c_i basis_i (v must lie in the subspace)."""
        if not self.contains(v):
            raise ValueError("vector is not in the subspace")
        return ImmutableMatrix(self.dim, 1, [v[p] for p in self.pivots])

    def float_basis(self) -> np.ndarray:
        return np.array(self.basis.tolist(), dtype=float).reshape(self.dim, self.n)

    def to_document(self) -> dict:
        return {"basis": [[str(e) for e in self.basis.row(i)] for i in range(self.dim)]}

    def __repr__(self) -> str:
        rows = [tuple(str(e) for e in self.basis.row(i)) for i in range(self.dim)]
        return f"RatSubspace(n={self.n}, basis={rows})"


@dataclass(frozen=True)
class AlgSubspace:
    field: NumberField
    n: int
    basis: Tuple[Tuple[NFElem, ...], ...]

    @classmethod
    def span(cls, field: NumberField, vectors: Sequence[Sequence[NFElem]], n: int) -> "AlgSubspace":
        for v in vectors:
            if len(v) != n:
                raise ValueError(f"vector of length {len(v)} in R^{n}")
            for e in v:
                if e.field != field:
                    raise FieldMismatch(f"basis entry {e!r} outside field {field.minpoly}")
        reduced, _ = rref_rows(vectors, field)
        return cls(field, n, tuple(tuple(row) for row in reduced))

    @classmethod
    def from_rational(cls, w: RatSubspace, field: Optional[NumberField] = None) -> "AlgSubspace":
        field = field or RATIONALS
        return cls.span(field, [rational_vector(v, field) for v in w.vectors()], w.n)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> Tuple[int, ...]:
        return tuple(next(j for j, e in enumerate(row) if not e.is_zero()) for row in self.basis)

    def vectors(self) -> List[List[NFElem]]:
        return [list(row) for row in self.basis]

    def contains(self, v: Sequence[NFElem]) -> bool:
        residual = list(v)
        for row, p in zip(self.basis, self.pivots):
            c = residual[p]
            if not c.is_zero():
                residual = [x - c * y for x, y in zip(residual, row)]
        return all(x.is_zero() for x in residual)

    def contains_rational(self, v: ImmutableMatrix) -> bool:
        return self.contains(rational_vector(v, self.field))

    def is_rational(self) -> bool:
        return all(e.is_rational() for row in self.basis for e in row)

    def to_rational(self) -> RatSubspace:
        if not self.is_rational():
            raise ValueError("subspace is not rational")
        rows = [ImmutableMatrix(self.n, 1, [e.coeffs[0] for e in row]) for row in self.basis]
        return RatSubspace.span(rows, self.n)

    def annihilator(self) -> List[List[NFElem]]:
        if self.dim == 0:
            return [[self.field.one() if i == j else self.field.zero() for i in range(self.n)] for j in range(self.n)]
        return nullspace_rows(self.basis, self.n, self.field)

    def apply(self, a: ImmutableMatrix, v: Sequence[NFElem]) -> List[NFElem]:
        out = []
        for i in range(self.n):
            acc = self.field.zero()
            for j in range(self.n):
                if a[i, j] != 0:
                    acc = acc + v[j].scale(a[i, j])
            out.append(acc)
        return out

    def is_invariant(self, a: ImmutableMatrix) -> bool:
        return all(self.contains(self.apply(a, v)) for v in self.basis)

    def float_basis(self) -> np.ndarray:
        return np.array([[e.to_float() for e in row] for row in self.basis], dtype=float).reshape(self.dim, self.n)

    def to_document(self) -> dict:
        doc = self.field.to_document()
        doc["basis_nf"] = [[e.to_document() for e in row] for row in self.basis]
        return doc

    def __repr__(self) -> str:
        return f"AlgSubspace(field={self.field.minpoly}, n={self.n}, dim={self.dim})"


def as_algebraic(w, field: Optional[NumberField] = None) -> AlgSubspace:
    if isinstance(w, AlgSubspace):
        return w
    return AlgSubspace.from_rational(w, field)


def require_rational(w) -> RatSubspace:
    """The rational form of W; leaf operations are exact only for rational subspaces."""
    if isinstance(w, RatSubspace):
        return w
    if w.is_rational():
        return w.to_rational()
    raise IrrationalInput(f"{w} is not rational; take its closure first")
