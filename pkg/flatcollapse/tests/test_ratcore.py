from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st
from sympy import Poly, QQ, sqrt

from flatcollapse.errors import DegreeCapExceeded, FieldMismatch, ParseError, ValidationFailed
from flatcollapse.ratcore import (
    NumberField,
    X,
    determinant_int,
    factor_over_Q,
    hnf,
    is_unimodular,
    matmul_int,
    nf_components,
    nf_embed,
    nf_vector,
    rat,
    rational_roots,
    reduce_mod1,
    rref_rows,
    snf,
    vec,
)

SQRT2 = NumberField.from_document([1, 0, -2], ["1", "2"])
CBRT2 = NumberField.from_document([1, 0, 0, -2], ["1", "2"])


def int_matrices(max_dim=8, bound=20):
    return st.integers(1, max_dim).flatmap(
        lambda rows: st.integers(1, max_dim).flatmap(
            lambda cols: st.lists(
                st.lists(st.integers(-bound, bound), min_size=cols, max_size=cols),
                min_size=rows,
                max_size=rows,
            )
        )
    )


def nf_elements(field):
    return st.lists(
        st.fractions(min_value=-20, max_value=20, max_denominator=10),
        min_size=field.degree,
        max_size=field.degree,
    ).map(field.element)


# ---------- Rationals ----------

def test_rat_parses_exact_inputs():
    assert rat("3/6") == rat(Fraction(1, 2)) == rat("1/2")
    assert rat(4) == 4


@pytest.mark.parametrize("bad", [0.5, True, "x/2", "1/0"])
def test_rat_rejects_inexact_or_malformed(bad):
    with pytest.raises(ParseError):
        rat(bad)


def test_reduce_mod1_lands_in_unit_cube():
    assert reduce_mod1(vec(["-1/4", "7/3"])) == vec(["3/4", "1/3"])


# ---------- Normal forms ----------

def test_hnf_example():
    h, u = hnf([[2, 4], [1, 3]])
    assert h == [[1, 1], [0, 2]]
    assert matmul_int(u, [[2, 4], [1, 3]]) == h
    assert is_unimodular(u)


def test_snf_example():
    s, u, v = snf([[2, 4], [1, 3]])
    assert s == [[1, 0], [0, 2]]
    assert matmul_int(matmul_int(u, [[2, 4], [1, 3]]), v) == s


@settings(max_examples=500, deadline=None)
@given(int_matrices())
def test_hnf_properties(m):
    h, u = hnf(m)
    assert is_unimodular(u)
    assert matmul_int(u, m) == h
    last_pivot = -1
    seen_zero = False
    for r, row in enumerate(h):
        if not any(row):
            seen_zero = True
            continue
        assert not seen_zero
        p = next(j for j, x in enumerate(row) if x)
        assert p > last_pivot
        assert row[p] > 0
        for above in h[:r]:
            assert 0 <= above[p] < row[p]
        last_pivot = p


@settings(max_examples=500, deadline=None)
@given(int_matrices())
def test_snf_properties(m):
    s, u, v = snf(m)
    assert is_unimodular(u) and is_unimodular(v)
    assert matmul_int(matmul_int(u, m), v) == s
    diag = [s[i][i] for i in range(min(len(m), len(m[0])))]
    assert all(s[i][j] == 0 for i in range(len(m)) for j in range(len(m[0])) if i != j)
    assert all(d >= 0 for d in diag)
    for a, b in zip(diag, diag[1:]):
        assert (b == 0) if a == 0 else b % a == 0


def test_determinant_int():
    assert determinant_int([[2, 4], [1, 3]]) == 2
    assert determinant_int([[0, 1], [1, 0]]) == -1
    assert determinant_int([]) == 1


# ---------- Polynomials ----------

def test_factor_over_q_splits_into_monic_irreducibles():
    fac = factor_over_Q([1, 0, 0, 0, -4])
    assert {f.as_expr() for f, _ in fac.factors} == {X**2 - 2, X**2 + 2}
    assert fac.expand() == Poly(X**4 - 4, X, domain=QQ)


def test_factor_over_q_keeps_multiplicities_and_leading_coefficient():
    fac = factor_over_Q([2, 0, -2])
    assert fac.leading == 2
    assert {(f.as_expr(), m) for f, m in fac.factors} == {(X - 1, 1), (X + 1, 1)}
    assert factor_over_Q([1, -2, 1]).factors[0][1] == 2


def test_factor_over_q_respects_degree_cap():
    with pytest.raises(DegreeCapExceeded):
        factor_over_Q([1, 0, 0, 0], degcap=2)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(-6, 6), min_size=1, max_size=4))
def test_rational_roots_of_products_of_linear_factors(roots):
    p = Poly(1, X, domain=QQ)
    for r in roots:
        p = p * Poly(X - r, X, domain=QQ)
    assert rational_roots(p) == sorted(set(rat(r) for r in roots))


def test_rational_roots_none_for_irreducible_quadratic():
    assert rational_roots(Poly(X**2 - 2, X, domain=QQ)) == []


# ---------- Number fields ----------

def test_number_field_rejects_reducible_or_ambiguous_input():
    with pytest.raises(ValidationFailed):
        NumberField.from_document([1, 0, -1], ["0", "2"])
    with pytest.raises(ValidationFailed):
        NumberField.from_document([1, 0, -2], ["-2", "2"])


@settings(max_examples=100, deadline=None)
@given(nf_elements(SQRT2), nf_elements(SQRT2), nf_elements(SQRT2))
def test_field_axioms_sqrt2(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    if not a.is_zero():
        assert a * a.inverse() == SQRT2.one()


@settings(max_examples=50, deadline=None)
@given(nf_elements(CBRT2))
def test_inverse_cbrt2(a):
    if not a.is_zero():
        assert a / a == CBRT2.one()
        assert abs(nf_embed(a) * nf_embed(a.inverse()) - 1.0) < 1e-9


@settings(max_examples=100, deadline=None)
@given(nf_elements(SQRT2))
def test_embedding_matches_real_evaluation(a):
    expected = float(a.coeffs[0] + a.coeffs[1] * sqrt(2))
    assert abs(nf_embed(a) - expected) <= 1e-9 * max(1.0, abs(expected))


def test_generator_squares_to_two():
    alpha = SQRT2.generator()
    assert alpha * alpha == SQRT2.from_rational(2)


def test_mixing_fields_is_rejected():
    with pytest.raises(FieldMismatch):
        SQRT2.one() + CBRT2.one()


def test_nf_components_split_powers():
    v = nf_vector([["1", "0"], ["0", "1"]], SQRT2)
    w0, w1 = nf_components(v, SQRT2)
    assert w0 == vec([1, 0])
    assert w1 == vec([0, 1])


def test_rref_over_a_number_field():
    a, one, zero = SQRT2.generator(), SQRT2.one(), SQRT2.zero()
    rows, pivots = rref_rows([[one, a], [a, one + one]], SQRT2)
    assert rows == [[one, a]] and pivots == [0]
    rows, pivots = rref_rows([[a, zero], [zero, a]], SQRT2)
    assert rows == [[one, zero], [zero, one]] and pivots == [0, 1]
