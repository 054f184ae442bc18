"""
Factorization of rational polynomials into monic irreducibles.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

from sympy import Poly, QQ, Rational, Symbol, divisors

from ..config.toolkit_config import get_toolkit_config
from ..errors import DegreeCapExceeded

log = logging.getLogger("ratcore")

X = Symbol("x")

MAX_DEGREE_CAP = 12


@dataclass(frozen=True)
class Factorization:
    leading: Rational
    factors: Tuple[Tuple[Poly, int], ...]

    def expand(self) -> Poly:
        product = Poly(self.leading, X, domain=QQ)
        for factor, mult in self.factors:
            product = product * factor ** mult
        return product


def as_poly(p: Union[Poly, Sequence]) -> Poly:
    """Coerce a Poly or a highest-degree-first coefficient list to a Poly over ℚ in x."""
    if isinstance(p, Poly):
        return Poly(p.as_expr(), X, domain=QQ) if p.gens != (X,) else p.set_domain(QQ)
    return Poly([Rational(c) for c in p], X, domain=QQ)


def rational_roots(p: Poly) -> List[Rational]:
    """All rational roots, by the rational-root theorem on the cleared integer polynomial."""
    p = as_poly(p)
    if p.is_zero:
        raise ValueError("zero polynomial has every root")
    _, prim = p.clear_denoms()
    coeffs = [int(c) for c in prim.all_coeffs()]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    roots = {Rational(0)} if len(coeffs) < len(prim.all_coeffs()) else set()
    if len(coeffs) <= 1:
        return sorted(roots)
    lead, const = abs(coeffs[0]), abs(coeffs[-1])
    for num in divisors(const):
        for den in divisors(lead):
            for candidate in (Rational(num, den), Rational(-num, den)):
                if prim.eval(candidate) == 0:
                    roots.add(candidate)
    return sorted(roots)


def factor_over_Q(p: Union[Poly, Sequence], degcap: Optional[int] = None) -> Factorization:
    """
    Split p into monic irreducible factors with multiplicities.

    The product of the factors times the leading coefficient reproduces p
    exactly; that identity and irreducibility of every factor are checked
    before returning.
    """
    if degcap is None:
        degcap = get_toolkit_config()["FACTOR_DEGREE_CAP"]
    if degcap > MAX_DEGREE_CAP:
        raise ValueError(f"degree cap {degcap} exceeds the supported maximum {MAX_DEGREE_CAP}")
    poly = as_poly(p)
    if poly.is_zero:
        raise ValueError("cannot factor the zero polynomial")
    if poly.degree() > degcap:
        raise DegreeCapExceeded(f"degree {poly.degree()} exceeds cap {degcap}")

    _, raw = poly.factor_list()
    monic = []
    for factor, mult in raw:
        factor = factor.set_domain(QQ).monic()
        if not factor.is_irreducible:
            raise ArithmeticError(f"factor {factor.as_expr()} is reducible")
        monic.append((factor, int(mult)))
    monic.sort(key=lambda fm: (fm[0].degree(), [str(c) for c in fm[0].all_coeffs()]))

    result = Factorization(leading=poly.LC(), factors=tuple(monic))
    if result.expand() != poly:
        raise ArithmeticError(f"factorization of {poly.as_expr()} does not reproduce it")
    log.debug(f"factored {poly.as_expr()} into {[(f.as_expr(), m) for f, m in monic]}")
    return result
