"""
Subspace file schema.

Rational subspaces: {"basis": [["p/q", ...], ...]}.
Algebraic subspaces: {"minpoly": [1, 0, -2], "root_interval": ["1", "2"],
"basis_nf": [[["c0", "c1"], ...], ...]} with one coefficient list per entry.
"""

from typing import List, Optional, Union

from pydantic import BaseModel, ValidationError, model_validator

from ..errors import ParseError
from ..ratcore import NumberField, mat, nf_vector
from .subspaces import AlgSubspace, RatSubspace

Scalar = Union[int, str]


class SubspaceDocument(BaseModel):
    basis: Optional[List[List[Scalar]]] = None
    minpoly: Optional[List[int]] = None
    root_interval: Optional[List[Scalar]] = None
    basis_nf: Optional[List[List[List[Scalar]]]] = None

    @model_validator(mode="after")
    def _one_kind(self) -> "SubspaceDocument":
        algebraic = self.basis_nf is not None
        if algebraic == (self.basis is not None):
            raise ValueError("give exactly one of 'basis' and 'basis_nf'")
        if algebraic and (self.minpoly is None or self.root_interval is None):
            raise ValueError("algebraic subspaces need 'minpoly' and 'root_interval'")
        return self


def parse_subspace_document(doc: dict, n: int) -> Union[RatSubspace, AlgSubspace]:
    try:
        parsed = SubspaceDocument.model_validate(doc)
    except ValidationError as e:
        raise ParseError(f"invalid subspace document: {e}")

    if parsed.basis is not None:
        if any(len(row) != n for row in parsed.basis):
            raise ParseError(f"subspace basis vectors must have {n} entries")
        if not parsed.basis:
            return RatSubspace.zero(n)
        return RatSubspace.from_rows(mat(parsed.basis, ncols=n))

    field = NumberField.from_document(parsed.minpoly, parsed.root_interval)
    vectors = []
    for row in parsed.basis_nf:
        if len(row) != n:
            raise ParseError(f"subspace basis vectors must have {n} entries")
        if any(len(coeffs) > field.degree for coeffs in row):
            raise ParseError(f"number-field entries take at most {field.degree} coefficients")
        vectors.append(nf_vector(row, field))
    return AlgSubspace.span(field, vectors, n)
