"""
Rational scalars, vectors and matrices.

Scalars are sympy ``Rational`` values, vectors are n×1 ``ImmutableMatrix``
columns and matrices are ``ImmutableMatrix`` instances, so every value is
hashable and exact. Nothing in here touches floating point.
"""

from fractions import Fraction
from typing import Iterable, List, Sequence, Union

from sympy import ImmutableMatrix, Integer, Rational, floor, ilcm

from ..errors import ParseError

RatLike = Union[int, str, Fraction, Rational]


def rat(value: RatLike) -> Rational:
    """Parse an exact rational from an int, a "p/q" string, a Fraction or a sympy Rational."""
    if isinstance(value, bool) or isinstance(value, float):
        raise ParseError(f"inexact or non-numeric rational input: {value!r}")
    if isinstance(value, Fraction):
        return Rational(value.numerator, value.denominator)
    try:
        parsed = Rational(value.strip() if isinstance(value, str) else value)
    except Exception as e:
        raise ParseError(f"cannot parse rational {value!r}: {e}")
    if not parsed.is_Rational:
        raise ParseError(f"not a rational number: {value!r}")
    return parsed


def rat_str(value) -> str:
    """Serialize a rational as "p/q" (or "p" for integers)."""
    return str(Rational(value))


def vec(entries: Iterable[RatLike]) -> ImmutableMatrix:
    items = [rat(e) for e in entries]
    return ImmutableMatrix(len(items), 1, items)


def mat(rows: Sequence[Sequence[RatLike]], ncols: int = None) -> ImmutableMatrix:
    parsed = [[rat(e) for e in row] for row in rows]
    if not parsed:
        return ImmutableMatrix(0, ncols or 0, [])
    width = len(parsed[0])
    if any(len(row) != width for row in parsed):
        raise ParseError("ragged matrix rows")
    return ImmutableMatrix(parsed)


def zero_vec(n: int) -> ImmutableMatrix:
    return ImmutableMatrix(n, 1, [0] * n)


def identity(n: int) -> ImmutableMatrix:
    return ImmutableMatrix(n, n, lambda i, j: 1 if i == j else 0)


def unit_vec(n: int, i: int) -> ImmutableMatrix:
    return ImmutableMatrix(n, 1, lambda r, _: 1 if r == i else 0)


def frac_part(r: Rational) -> Rational:
    return r - floor(r)


def reduce_mod1(v: ImmutableMatrix) -> ImmutableMatrix:
    """Representative of v mod ℤⁿ in the half-open cube [0,1)ⁿ."""
    return ImmutableMatrix(v.rows, v.cols, [frac_part(e) for e in v])


def is_integral(m: ImmutableMatrix) -> bool:
    return all(e.is_integer for e in m)


def to_int_rows(m: ImmutableMatrix) -> List[List[int]]:
    if not is_integral(m):
        raise ValueError("matrix has non-integer entries")
    return [[int(m[i, j]) for j in range(m.cols)] for i in range(m.rows)]


def common_denominator(values: Iterable[Rational]) -> int:
    d = 1
    for v in values:
        d = ilcm(d, Rational(v).q)
    return int(d)


def rows_of(m: ImmutableMatrix) -> List[ImmutableMatrix]:
    """Rows of m as column vectors."""
    return [m.row(i).T for i in range(m.rows)]


def stack_rows(vectors: Sequence[ImmutableMatrix], n: int) -> ImmutableMatrix:
    """Stack column vectors as the rows of a k×n matrix (k may be 0)."""
    if not vectors:
        return ImmutableMatrix(0, n, [])
    return ImmutableMatrix(len(vectors), n, [e for v in vectors for e in v])


def as_integer(r: Rational) -> int:
    if not Rational(r).is_integer:
        raise ValueError(f"{r} is not an integer")
    return int(Integer(r))
