from .rational import (
    RatLike,
    as_integer,
    common_denominator,
    frac_part,
    identity,
    is_integral,
    mat,
    rat,
    rat_str,
    reduce_mod1,
    rows_of,
    stack_rows,
    to_int_rows,
    unit_vec,
    vec,
    zero_vec,
)
from .normal_forms import determinant_int, hnf, is_unimodular, matmul_int, snf, transpose_int
from .polynomials import X, Factorization, as_poly, factor_over_Q, rational_roots
from .number_field import (
    RATIONALS,
    NFElem,
    NumberField,
    nf_components,
    nf_embed,
    nf_vector,
    nullspace_rows,
    rational_vector,
    rref_rows,
)

__all__ = [
    "RatLike", "as_integer", "common_denominator", "frac_part", "identity", "is_integral", "mat",
    "rat", "rat_str", "reduce_mod1", "rows_of", "stack_rows", "to_int_rows", "unit_vec", "vec",
    "zero_vec", "determinant_int", "hnf", "is_unimodular", "matmul_int", "snf", "transpose_int",
    "X", "Factorization", "as_poly", "factor_over_Q", "rational_roots", "RATIONALS", "NFElem",
    "NumberField", "nf_components", "nf_embed", "nf_vector", "nullspace_rows", "rational_vector",
    "rref_rows",
]
