"""
Crystallographic groups in lattice coordinates.

A group is stored as π = {(A, v̄_A + ℓ) : A ∈ H, ℓ ∈ ℤⁿ}: the point group H
with one translation representative v̄_A ∈ [0,1)ⁿ per element. The lattice
is always ℤⁿ and the metric lives in the Gram form.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Tuple, Union

from pydantic import BaseModel, Field, ValidationError
from sympy import ImmutableMatrix, Matrix

from ..config import get_toolkit_config
from ..errors import (
    CocycleViolation,
    ElementNotInPointGroup,
    NotGramOrthogonal,
    ParseError,
    PointGroupBoundExceeded,
    ValidationFailed,
)
from ..latgeo import GramForm
from ..ratcore import identity, is_integral, mat, rat_str, reduce_mod1, vec, zero_vec

log = logging.getLogger("crysgroup")

Element = Tuple[ImmutableMatrix, ImmutableMatrix]


# ---------- Group file schema ----------

class GeneratorDoc(BaseModel):
    matrix: List[List[int]]
    translation: List[Union[int, str]]


class GroupDocument(BaseModel):
    dim: int = Field(ge=0)
    gram: List[List[Union[int, str]]]
    generators: List[GeneratorDoc] = Field(default_factory=list)


def parse_group_document(doc: Union[dict, GroupDocument]) -> GroupDocument:
    if isinstance(doc, GroupDocument):
        return doc
    try:
        return GroupDocument.model_validate(doc)
    except ValidationError as e:
        raise ParseError(f"invalid group document: {e}")


# ---------- Group ----------

@dataclass(frozen=True)
class CrystGroup:
    n: int
    gram: GramForm
    point_group: Tuple[ImmutableMatrix, ...]
    translations: Tuple[ImmutableMatrix, ...]
    generators: Tuple[Element, ...] = ()
    _index: Dict[ImmutableMatrix, int] = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if not self._index:
            self._index.update({a: i for i, a in enumerate(self.point_group)})

    @property
    def order(self) -> int:
        return len(self.point_group)

    def contains(self, a: ImmutableMatrix) -> bool:
        return ImmutableMatrix(a) in self._index

    def index_of(self, a: ImmutableMatrix) -> int:
        try:
            return self._index[ImmutableMatrix(a)]
        except KeyError:
            raise ElementNotInPointGroup(f"{a.tolist()} is not in the point group of order {self.order}")

    def translation(self, a: ImmutableMatrix) -> ImmutableMatrix:
        """The representative v̄_A ∈ [0,1)ⁿ."""
        return self.translations[self.index_of(a)]

    def elements(self) -> Iterator[Element]:
        return zip(self.point_group, self.translations)

    def nontrivial_elements(self) -> Iterator[Element]:
        ident = identity(self.n)
        return ((a, v) for a, v in self.elements() if a != ident)

    def multiply(self, x: Element, y: Element) -> Element:
        (a, v), (b, w) = x, y
        return ImmutableMatrix(a * b), ImmutableMatrix(a * w + v)

    def change_basis(self, b: ImmutableMatrix) -> "CrystGroup":
        """
        The same group after the unimodular change of lattice basis x ↦ Bx:
        A ↦ BAB⁻¹, v̄ ↦ Bv̄, G ↦ B⁻ᵀGB⁻¹.
        """
        b = ImmutableMatrix(b)
        if not is_integral(b) or abs(b.det()) != 1:
            raise ValidationFailed("change of basis must be unimodular")
        b_inv = b.inv()
        gram = ImmutableMatrix(b_inv.T * self.gram.matrix * b_inv)
        gens = [(ImmutableMatrix(b * a * b_inv), ImmutableMatrix(b * v)) for a, v in self.generators]
        return load_validate(_document(self.n, gram, gens))

    def to_document(self) -> dict:
        return _document(self.n, self.gram.matrix, self.generators)

    def __repr__(self) -> str:
        return f"CrystGroup(n={self.n}, order={self.order}, generators={len(self.generators)})"


def _document(n: int, gram: ImmutableMatrix, generators) -> dict:
    return {
        "dim": n,
        "gram": [[rat_str(gram[i, j]) for j in range(n)] for i in range(n)],
        "generators": [
            {
                "matrix": [[int(a[i, j]) for j in range(n)] for i in range(n)],
                "translation": [rat_str(e) for e in v],
            }
            for a, v in generators
        ],
    }


def _parse_generator(gen: GeneratorDoc, n: int, gram: GramForm) -> Element:
    if len(gen.matrix) != n or any(len(row) != n for row in gen.matrix):
        raise ParseError(f"generator matrix must be {n}x{n}")
    if len(gen.translation) != n:
        raise ParseError(f"generator translation must have {n} entries")
    a = ImmutableMatrix(gen.matrix) if n else ImmutableMatrix(0, 0, [])
    if abs(a.det()) != 1:
        raise ValidationFailed(f"generator {gen.matrix} is not in GL({n}, Z)")
    if not gram.preserved_by(a):
        raise NotGramOrthogonal(f"generator {gen.matrix} does not preserve the Gram form")
    return a, vec(gen.translation)


def _enumerate(n: int, generators: List[Element], bound: int) -> Tuple[List[ImmutableMatrix], List[ImmutableMatrix]]:
    """Closure of the generators under right multiplication, breadth first from Id."""
    ident = identity(n)
    elements = [ident]
    translations = [zero_vec(n)]
    seen = {ident: 0}
    queue = deque([0])
    while queue:
        i = queue.popleft()
        a, v = elements[i], translations[i]
        for b, w in generators:
            ab = ImmutableMatrix(a * b)
            vw = reduce_mod1(ImmutableMatrix(a * w + v))
            j = seen.get(ab)
            if j is None:
                if len(elements) >= bound:
                    raise PointGroupBoundExceeded(f"point group exceeds the bound {bound}")
                seen[ab] = len(elements)
                elements.append(ab)
                translations.append(vw)
                queue.append(len(elements) - 1)
            elif translations[j] != vw:
                raise CocycleViolation(
                    f"element {ab.tolist()} reached with translations {list(translations[j])} and {list(vw)}"
                )
    return elements, translations


def _check_cocycle(elements: List[ImmutableMatrix], translations: List[ImmutableMatrix]) -> None:
    index = {a: i for i, a in enumerate(elements)}
    for a, v in zip(elements, translations):
        for b, w in zip(elements, translations):
            ab = ImmutableMatrix(a * b)
            k = index.get(ab)
            if k is None:
                raise ValidationFailed(f"point group is not closed: {ab.tolist()} missing")
            if reduce_mod1(ImmutableMatrix(a * w + v)) != translations[k]:
                raise CocycleViolation(f"cocycle identity fails for {a.tolist()} and {b.tolist()}")


def load_validate(doc: Union[dict, GroupDocument], point_group_bound: Optional[int] = None) -> CrystGroup:
    """Parse a group document, enumerate the point group and verify every group invariant."""
    parsed = parse_group_document(doc)
    n = parsed.dim
    bound = point_group_bound if point_group_bound is not None else get_toolkit_config()["POINT_GROUP_BOUND"]

    gram_rows = mat(parsed.gram, ncols=n)
    if gram_rows.shape != (n, n):
        raise ParseError(f"Gram matrix must be {n}x{n}, got {gram_rows.shape}")
    gram = GramForm(gram_rows)

    generators = [_parse_generator(g, n, gram) for g in parsed.generators]
    elements, translations = _enumerate(n, generators, bound)
    _check_cocycle(elements, translations)
    for a in elements:
        if not gram.preserved_by(a):
            raise NotGramOrthogonal(f"{a.tolist()} does not preserve the Gram form")

    log.info(f"group validated: n={n}, |H|={len(elements)}, generators={len(generators)}")
    return CrystGroup(
        n=n,
        gram=gram,
        point_group=tuple(elements),
        translations=tuple(translations),
        generators=tuple(generators),
    )


def inverse_element(g: CrystGroup, a: ImmutableMatrix) -> Element:
    """(A, v̄_A)⁻¹ = (A⁻¹, −A⁻¹ v̄_A), translation reduced mod ℤⁿ."""
    a_inv = ImmutableMatrix(Matrix(a).inv())
    return a_inv, reduce_mod1(ImmutableMatrix(-a_inv * g.translation(a)))
