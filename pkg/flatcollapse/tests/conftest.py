"""Shared fixture groups and subspaces for the flatcollapse test suite."""

import json
import os

import pytest

from flatcollapse.crysgroup import load_validate
from flatcollapse.latgeo import RatSubspace, parse_subspace_document
from flatcollapse.ratcore import vec

FIXTURES = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "fixtures")


def fixture_path(name: str) -> str:
    return os.path.join(FIXTURES, name)


def load_group(name: str):
    with open(fixture_path(f"{name}.json")) as f:
        return load_validate(json.load(f))


def load_subspace(name: str, n: int):
    with open(fixture_path(f"{name}.json")) as f:
        return parse_subspace_document(json.load(f), n)


def span(*rows, n=None):
    vectors = [vec(r) for r in rows]
    return RatSubspace.span(vectors, n or len(rows[0]))


@pytest.fixture(scope="session")
def t2():
    return load_group("T2")


@pytest.fixture(scope="session")
def kb():
    return load_group("KB")


@pytest.fixture(scope="session")
def hex3():
    return load_group("HEX3")


@pytest.fixture(scope="session")
def hw():
    return load_group("HW")


@pytest.fixture(scope="session")
def line_irr():
    return load_subspace("LINE_IRR", 2)


@pytest.fixture(scope="session")
def e1():
    return span([1, 0])


@pytest.fixture(scope="session")
def e2():
    return span([0, 1])


@pytest.fixture(scope="session")
def bieberbach_groups(t2, kb, hw):
    return {"T2": t2, "KB": kb, "HW": hw}


@pytest.fixture(scope="session")
def all_groups(t2, kb, hex3, hw):
    return {"T2": t2, "KB": kb, "HEX3": hex3, "HW": hw}


def candidate_subspaces(n: int):
    """Coordinate subspaces plus a diagonal line, for filtering by invariance."""
    from itertools import combinations

    out = [RatSubspace.zero(n), RatSubspace.full(n)]
    for k in range(1, n):
        for idx in combinations(range(n), k):
            out.append(span(*[[1 if j == i else 0 for j in range(n)] for i in idx], n=n))
    out.append(span([1] * n))
    return out


def invariant_subspaces(g):
    return [w for w in candidate_subspaces(g.n) if all(w.is_invariant(a) for a in g.point_group)]


def random_unimodular(n: int, rng, steps: int = 4):
    """Product of seeded elementary row operations, entries kept small."""
    from sympy import ImmutableMatrix, Matrix

    m = Matrix.eye(n)
    for _ in range(steps):
        i, j = rng.choice(n, size=2, replace=False) if n > 1 else (0, 0)
        if n > 1:
            m[int(i), :] = m[int(i), :] + int(rng.choice([-1, 1])) * m[int(j), :]
        if rng.random() < 0.3:
            m[int(i), :] = -m[int(i), :]
    return ImmutableMatrix(m)
