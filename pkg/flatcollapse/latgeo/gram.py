from dataclasses import dataclass

from sympy import ImmutableMatrix

from ..errors import ParseError
from ..ratcore import identity


@dataclass(frozen=True)
class GramForm:
    """Euclidean inner product in lattice coordinates: <x, y> = xᵀ G y."""

    matrix: ImmutableMatrix

    def __post_init__(self):
        g = self.matrix
        if g.rows != g.cols:
            raise ParseError(f"Gram matrix must be square, got {g.shape}")
        if g != g.T:
            raise ParseError("Gram matrix is not symmetric")
        for k in range(1, g.rows + 1):
            if g[:k, :k].det() <= 0:
                raise ParseError(f"Gram matrix is not positive definite (minor {k})")

    @classmethod
    def standard(cls, n: int) -> "GramForm":
        return cls(identity(n))

    @property
    def n(self) -> int:
        return self.matrix.rows

    def inner(self, x: ImmutableMatrix, y: ImmutableMatrix):
        return (x.T * self.matrix * y)[0, 0]

    def norm_sq(self, x: ImmutableMatrix):
        return self.inner(x, x)

    def preserved_by(self, a: ImmutableMatrix) -> bool:
        return a.T * self.matrix * a == self.matrix

    def restricted(self, basis_rows: ImmutableMatrix) -> ImmutableMatrix:
        """Gram matrix of the vectors given as rows: B G Bᵀ."""
        return ImmutableMatrix(basis_rows * self.matrix * basis_rows.T)
