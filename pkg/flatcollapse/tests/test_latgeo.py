from itertools import product

import pytest
from hypothesis import assume, given, settings, strategies as st
from sympy import ImmutableMatrix, Rational

from flatcollapse.errors import ParseError
from flatcollapse.latgeo import (
    AlgSubspace,
    GramForm,
    RatSubspace,
    adapted_zbasis,
    closure_density_defect,
    flag_adapted_basis,
    l_closure,
    lattice_membership,
    parse_subspace_document,
    preimage_in_generators,
    projected_lattice,
    sublattice_from_generators,
    subspace_lattice,
)
from flatcollapse.ratcore import NumberField, determinant_int, mat, nf_vector, to_int_rows, vec

from conftest import span

SQRT2 = NumberField.from_document([1, 0, -2], ["1", "2"])
HEX_GRAM = GramForm(mat([[1, "1/2"], ["1/2", 1]]))


def brute_force_member(gens_int, t_int):
    """t ∈ span_Z(gens) decided on the finite quotient by det·Z^n."""
    n = len(t_int)
    d = abs(determinant_int(gens_int))
    residues = set()
    for c in product(range(d), repeat=len(gens_int)):
        residues.add(tuple(sum(ci * g[j] for ci, g in zip(c, gens_int)) % d for j in range(n)))
    return tuple(x % d for x in t_int) in residues


def square_matrices(max_dim=3):
    return st.integers(1, max_dim).flatmap(
        lambda n: st.lists(st.lists(st.integers(-1, 1), min_size=n, max_size=n), min_size=n, max_size=n)
    )


# ---------- Sublattices ----------

def test_sublattice_superlattice_example():
    lattice = sublattice_from_generators([vec([1, 0]), vec([0, 1]), vec(["1/2", "1/2"])])
    assert lattice.basis == [vec(["1/2", "1/2"]), vec([0, 1])]
    assert lattice.covolume_sq(GramForm.standard(2)) == Rational(1, 4)


def test_sublattice_examples_trivial():
    assert sublattice_from_generators([vec([2, 0])]).basis == [vec([2, 0])]
    assert sublattice_from_generators([vec([0, 0])]).rank == 0


def test_lattice_membership_examples():
    assert lattice_membership(vec([3, 3]), sublattice_from_generators([vec([1, 1])])) == (3,)
    assert lattice_membership(vec(["1/2", 0]), sublattice_from_generators([vec([1, 0]), vec([0, 1])])) is None
    lattice = sublattice_from_generators([vec(["1/2", "1/2"]), vec([0, 1])])
    assert lattice_membership(vec([1, 0]), lattice) == (2, -1)


@settings(max_examples=200, deadline=None)
@given(square_matrices(), st.data())
def test_lattice_membership_agrees_with_enumeration(gens_int, data):
    assume(determinant_int(gens_int) != 0)
    n = len(gens_int)
    t_int = data.draw(st.lists(st.integers(-6, 6), min_size=n, max_size=n))
    lattice = sublattice_from_generators([vec([Rational(x, 2) for x in g]) for g in gens_int])
    t = vec([Rational(x, 2) for x in t_int])
    coeffs = lattice_membership(t, lattice)
    assert (coeffs is not None) == brute_force_member(gens_int, t_int)
    if coeffs is not None:
        rebuilt = sum((c * b for c, b in zip(coeffs, lattice.basis)), ImmutableMatrix.zeros(n, 1))
        assert rebuilt == t


def test_subspace_lattice_examples():
    assert subspace_lattice(span([1, 1]))[0].basis == [vec([1, 1])]
    lattice, l_generated = subspace_lattice(span(["1/2", "1/2"]))
    assert lattice.basis == [vec([1, 1])] and l_generated
    lattice, l_generated = subspace_lattice(RatSubspace.zero(2))
    assert lattice.rank == 0 and l_generated


def test_adapted_zbasis_examples():
    assert adapted_zbasis(span([1, 1])) == [vec([1, 1]), vec([0, 1])]
    assert adapted_zbasis(RatSubspace.zero(2)) == [vec([1, 0]), vec([0, 1])]
    basis = adapted_zbasis(RatSubspace.full(3))
    assert abs(determinant_int([[int(e) for e in b] for b in basis])) == 1


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=1, max_size=n - 1)
))
def test_adapted_zbasis_is_unimodular_and_adapted(rows):
    n = len(rows[0])
    w = RatSubspace.span([vec(r) for r in rows], n)
    basis = adapted_zbasis(w)
    assert abs(determinant_int([[int(e) for e in b] for b in basis])) == 1
    assert all(w.contains(b) for b in basis[: w.dim])
    lattice, _ = subspace_lattice(w)
    assert lattice.rank == w.dim


def test_flag_adapted_basis_nests():
    small, large = span([1, 1, 0], n=3), span([1, 1, 0], [0, 0, 1], n=3)
    basis = flag_adapted_basis([small, large])
    assert small.contains(basis[0])
    assert all(large.contains(b) for b in basis[:2])
    assert abs(determinant_int([[int(e) for e in b] for b in basis])) == 1


def test_projected_lattice_examples():
    assert projected_lattice(span([0, 1]), GramForm.standard(2)).basis == [vec([0, 1])]
    assert projected_lattice(span([1, -1]), GramForm.standard(2)).basis == [vec(["1/2", "-1/2"])]
    assert projected_lattice(span([1, 0]), HEX_GRAM).basis == [vec(["1/2", 0])]


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 4).flatmap(
    lambda n: st.tuples(
        st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=1, max_size=n),
        st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=1, max_size=n),
    )
))
def test_intersection_of_rational_subspaces_is_lattice_generated(pair):
    rows1, rows2 = pair
    n = len(rows1[0])
    w1 = RatSubspace.span([vec(r) for r in rows1], n)
    w2 = RatSubspace.span([vec(r) for r in rows2], n)
    meet = w1.intersection(w2)
    lattice, _ = subspace_lattice(meet)
    assert lattice.rank == meet.dim


# ---------- L-closure ----------

def nf_rows(n, max_rows):
    entry = st.tuples(st.integers(-3, 3), st.integers(-3, 3)).map(lambda c: [str(c[0]), str(c[1])])
    return st.lists(st.lists(entry, min_size=n, max_size=n), min_size=1, max_size=max_rows)


def alg_span(rows, n):
    return AlgSubspace.span(SQRT2, [nf_vector(r, SQRT2) for r in rows], n)


def evaluate(covector, v):
    acc = SQRT2.zero()
    for c, e in zip(covector, v):
        acc = acc + e.scale(c)
    return acc


def test_closure_of_irrational_line_is_plane(line_irr):
    result = l_closure(line_irr, GramForm.standard(2))
    assert result.what == RatSubspace.full(2)
    assert result.w_rational.dim == 0
    assert result.k_part.dim == 1
    assert result.quotient_lattice.rank == 0


def test_closure_in_three_space():
    w = alg_span([[["1"], ["0", "1"], ["0"]]], 3)
    result = l_closure(w, GramForm.standard(3))
    assert result.what == span([1, 0, 0], [0, 1, 0], n=3)
    assert result.k_part.dim == 1
    assert (len(result.adapted.w), len(result.adapted.v), len(result.adapted.u)) == (0, 2, 1)
    vectors = result.adapted.all_vectors()
    assert abs(determinant_int([[int(e) for e in v] for v in vectors])) == 1


def test_closure_of_rational_subspace_is_itself():
    w = span([1, 1])
    result = l_closure(w, GramForm.standard(2))
    assert result.what == w
    assert result.k_part.dim == 0
    assert result.w_rational == w


@settings(max_examples=50, deadline=None)
@given(st.integers(2, 4).flatmap(lambda n: nf_rows(n, 2)))
def test_closure_is_idempotent_and_monotone(rows):
    n = len(rows[0])
    gram = GramForm.standard(n)
    w2 = alg_span(rows, n)
    assume(w2.dim > 0)
    hat2 = l_closure(w2, gram).what
    assert l_closure(hat2, gram).what == hat2
    w1 = alg_span(rows[:1], n)
    if w1.dim:
        assert l_closure(w1, gram).what.is_subspace_of(hat2)


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 4).flatmap(lambda n: st.tuples(nf_rows(n, 2), st.lists(st.integers(-3, 3), min_size=n, max_size=n))),
       st.booleans())
def test_closure_is_smallest_rational_subspace(case, from_annihilator):
    rows, raw = case
    n = len(rows[0])
    w = alg_span(rows, n)
    assume(w.dim > 0)
    what = l_closure(w, GramForm.standard(n)).what
    covector = list(raw)
    if from_annihilator and what.dim < n:
        combo = sum((c * a for c, a in zip(raw, what.annihilator())), ImmutableMatrix.zeros(n, 1))
        covector = list(combo)
    vanishes_on_w = all(evaluate(covector, v).is_zero() for v in w.basis)
    vanishes_on_hat = all(sum(c * e for c, e in zip(covector, v)) == 0 for v in what.vectors())
    assert vanishes_on_w == vanishes_on_hat


def test_closure_of_invariant_subspaces_is_invariant(all_groups):
    from conftest import invariant_subspaces

    for g in all_groups.values():
        for w in invariant_subspaces(g):
            what = l_closure(w, g.gram).what
            assert all(what.image_under(a) == what for a in g.point_group)


def test_density_of_projected_lattice(line_irr):
    gram = GramForm.standard(2)
    result = l_closure(line_irr, gram)
    assert closure_density_defect(result, gram, samples=50, height=40) <= 0.05


def test_closure_document_shape(line_irr):
    doc = l_closure(line_irr, GramForm.standard(2)).to_document()
    assert doc["closure"] == [["1", "0"], ["0", "1"]]
    assert set(doc["adapted_basis"]) == {"w", "v", "u"}


# ---------- Subspace documents ----------

def test_parse_rational_subspace_document():
    w = parse_subspace_document({"basis": [["1/2", "0"]]}, 2)
    assert w == span([1, 0])


def test_parse_algebraic_subspace_document(line_irr):
    assert isinstance(line_irr, AlgSubspace)
    assert line_irr.dim == 1 and not line_irr.is_rational()


@pytest.mark.parametrize(
    "doc",
    [
        {},
        {"basis": [["1", "0"]], "basis_nf": [[["1"], ["0"]]]},
        {"basis_nf": [[["1"], ["0"]]]},
        {"basis": [["1", "0", "0"]]},
        {"minpoly": [1, 0, -2], "root_interval": ["1", "2"], "basis_nf": [[["1", "0", "1"], ["0"]]]},
    ],
)
def test_malformed_subspace_documents_are_rejected(doc):
    with pytest.raises(ParseError):
        parse_subspace_document(doc, 2)


def test_lattice_document_is_json_ready():
    lattice = sublattice_from_generators([vec(["1/2", "1/2"]), vec([0, 1])])
    assert lattice.to_document() == {"basis": [["1/2", "1/2"], ["0", "1"]]}
    assert to_int_rows(mat([[1, 2]])) == [[1, 2]]


def test_preimage_in_generators_gives_integer_witness():
    gens = [vec([2, 0]), vec([1, 1])]
    assert preimage_in_generators(vec([3, 1]), gens) == (1, 1)
    assert preimage_in_generators(vec([1, 0]), gens) is None
    assert preimage_in_generators(vec([0, 0]), []) == ()


def test_index_of_sublattice():
    full = sublattice_from_generators([vec([1, 0]), vec([0, 1])])
    assert sublattice_from_generators([vec([2, 0]), vec([0, 3])]).index_in(full) == 6
    assert sublattice_from_generators([vec([2, 1]), vec([1, 1])]).index_in(full) == 1
    with pytest.raises(ValueError):
        full.index_in(sublattice_from_generators([vec([2, 0]), vec([0, 2])]))
