"""
Arithmetic in a real number field ℚ(α).

A field is given by a monic irreducible integer polynomial (highest
degree first) and a rational interval isolating the real root α.
Elements carry their coefficients in ascending powers of α.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import List, Optional, Sequence, Tuple

from sympy import ImmutableMatrix, Poly, QQ, Rational

from ..errors import FieldMismatch, ValidationFailed
from .polynomials import X
from .rational import RatLike, rat


@dataclass(frozen=True)
class NumberField:
    minpoly: Tuple[int, ...]
    root_interval: Tuple[Rational, Rational]

    def __post_init__(self):
        if len(self.minpoly) < 2:
            raise ValidationFailed("minimal polynomial must have degree >= 1")
        if self.minpoly[0] != 1:
            raise ValidationFailed(f"minimal polynomial {self.minpoly} is not monic")
        lo, hi = self.root_interval
        if lo > hi:
            raise ValidationFailed(f"empty isolation interval [{lo}, {hi}]")
        if not self.poly.is_irreducible:
            raise ValidationFailed(f"{self.poly.as_expr()} is reducible over Q")
        roots = self.poly.count_roots(lo, hi)
        if roots != 1:
            raise ValidationFailed(f"interval [{lo}, {hi}] contains {roots} roots of {self.poly.as_expr()}")

    @classmethod
    def from_document(cls, minpoly: Sequence[int], interval: Sequence[RatLike]) -> "NumberField":
        if len(interval) != 2:
            raise ValidationFailed("root_interval needs exactly two endpoints")
        return cls(tuple(int(c) for c in minpoly), (rat(interval[0]), rat(interval[1])))

    @cached_property
    def poly(self) -> Poly:
        return Poly(list(self.minpoly), X, domain=QQ)

    @property
    def degree(self) -> int:
        return len(self.minpoly) - 1

    @cached_property
    def root_approx(self) -> float:
        lo, hi = self.root_interval
        if lo == hi:
            return float(lo)
        s, t = self.poly.refine_root(lo, hi, eps=Rational(1, 10 ** 18))
        return float((Rational(s) + Rational(t)) / 2)

    def element(self, coeffs: Sequence[RatLike]) -> "NFElem":
        values = [rat(c) for c in coeffs]
        if len(values) > self.degree:
            raise ValueError(f"{len(values)} coefficients for a degree-{self.degree} field")
        values += [Rational(0)] * (self.degree - len(values))
        return NFElem(self, tuple(values))

    def from_rational(self, q: RatLike) -> "NFElem":
        return self.element([q])

    def zero(self) -> "NFElem":
        return self.element([])

    def one(self) -> "NFElem":
        return self.element([1])

    def generator(self) -> "NFElem":
        if self.degree == 1:
            return self.from_rational(-self.minpoly[1])
        return self.element([0, 1])

    def to_document(self) -> dict:
        return {
            "minpoly": list(self.minpoly),
            "root_interval": [str(self.root_interval[0]), str(self.root_interval[1])],
        }


RATIONALS = NumberField((1, 0), (Rational(-1), Rational(1)))


@dataclass(frozen=True)
class NFElem:
    field: NumberField
    coeffs: Tuple[Rational, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.field.degree:
            raise ValueError(f"element has {len(self.coeffs)} coefficients, field degree is {self.field.degree}")

    def _check(self, other: "NFElem") -> None:
        if not isinstance(other, NFElem) or other.field != self.field:
            raise FieldMismatch(f"cannot combine elements of {self.field.minpoly} and {getattr(other, 'field', other)}")

    def _as_poly(self) -> Poly:
        return Poly(list(reversed(self.coeffs)), X, domain=QQ)

    def _from_poly(self, p: Poly) -> "NFElem":
        reduced = p.rem(self.field.poly)
        coeffs = [Rational(c) for c in reversed(reduced.all_coeffs())] if not reduced.is_zero else []
        return self.field.element(coeffs)

    def __add__(self, other: "NFElem") -> "NFElem":
        self._check(other)
        return NFElem(self.field, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "NFElem") -> "NFElem":
        self._check(other)
        return NFElem(self.field, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "NFElem":
        return NFElem(self.field, tuple(-a for a in self.coeffs))

    def __mul__(self, other: "NFElem") -> "NFElem":
        self._check(other)
        if self.field.degree == 1:
            return NFElem(self.field, (self.coeffs[0] * other.coeffs[0],))
        return self._from_poly(self._as_poly() * other._as_poly())

    def scale(self, q: RatLike) -> "NFElem":
        q = rat(q)
        return NFElem(self.field, tuple(q * a for a in self.coeffs))

    def inverse(self) -> "NFElem":
        if self.is_zero():
            raise ZeroDivisionError("zero has no inverse")
        if self.field.degree == 1:
            return NFElem(self.field, (1 / self.coeffs[0],))
        return self._from_poly(self._as_poly().invert(self.field.poly))

    def __truediv__(self, other: "NFElem") -> "NFElem":
        self._check(other)
        return self * other.inverse()

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def to_float(self) -> float:
        return nf_embed(self)

    def to_document(self) -> List[str]:
        return [str(c) for c in self.coeffs]

    def __repr__(self) -> str:
        terms = [f"{c}*a^{j}" if j else f"{c}" for j, c in enumerate(self.coeffs) if c != 0]
        return "NFElem(" + (" + ".join(terms) or "0") + ")"


def nf_embed(elem: NFElem) -> float:
    """Floating evaluation at the real root selected by the isolation interval."""
    alpha = elem.field.root_approx
    total = 0.0
    for c in reversed(elem.coeffs):
        total = total * alpha + float(c)
    return total


def nf_components(v: Sequence[NFElem], field: NumberField) -> List[ImmutableMatrix]:
    """
    Coefficient vectors w_0..w_{d-1} with v = Σ α^j w_j entrywise.
    """
    for entry in v:
        if entry.field != field:
            raise FieldMismatch(f"entry {entry!r} is not in the field {field.minpoly}")
    n = len(v)
    return [ImmutableMatrix(n, 1, [entry.coeffs[j] for entry in v]) for j in range(field.degree)]


# ---------- Linear algebra over ℚ(α) ----------

def rref_rows(rows: Sequence[Sequence[NFElem]], field: NumberField) -> Tuple[List[List[NFElem]], List[int]]:
    """Reduced row echelon form over the field; zero rows dropped."""
    work = [list(row) for row in rows]
    if not work:
        return [], []
    ncols = len(work[0])
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, len(work)) if not work[i][c].is_zero()), None)
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        inv = work[r][c].inverse()
        work[r] = [x * inv for x in work[r]]
        for i in range(len(work)):
            if i != r and not work[i][c].is_zero():
                factor = work[i][c]
                work[i] = [x - factor * y for x, y in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    return work[:r], pivots


def nullspace_rows(rows: Sequence[Sequence[NFElem]], ncols: int, field: NumberField) -> List[List[NFElem]]:
    """Basis of {x : Σ_j rows[i][j] x_j = 0 for all i} over the field."""
    reduced, pivots = rref_rows(rows, field)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [field.zero() for _ in range(ncols)]
        x[f] = field.one()
        for row, p in zip(reduced, pivots):
            x[p] = -row[f]
        basis.append(x)
    return basis


def nf_vector(entries: Sequence[Sequence[RatLike]], field: NumberField) -> List[NFElem]:
    return [field.element(coeffs) for coeffs in entries]


def rational_vector(v: ImmutableMatrix, field: Optional[NumberField] = None) -> List[NFElem]:
    field = field or RATIONALS
    return [field.from_rational(e) for e in v]
