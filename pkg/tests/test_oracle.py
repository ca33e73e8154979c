import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mak.errors import ResourceLimitError
from mak.homology import AbelianGroup, reduced_cohomology
from mak.oracle import (
    ZkCohomology,
    betti_vector,
    format_poincare,
    poincare_series,
    subset_bound,
    torsion_entries,
    zk_cohomology,
)
from mak.simplicial import disjoint_points, from_facets, full_simplex, full_subcomplex, random_complex, simplex_boundary

from oracles import arrangement_betti, trim

RP2 = from_facets(
    6,
    [(1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6),
     (2, 3, 5), (3, 4, 6), (2, 4, 5), (3, 5, 6), (2, 4, 6)],
)


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_full_simplex_is_contractible(m):
    Z = zk_cohomology(full_simplex(m))
    assert betti_vector(Z) == [1] + [0] * (2 * m)
    assert Z.groups[0] == AbelianGroup(1)
    assert all(g.is_trivial() for g in Z.groups[1:])


def test_betti_vector_full_simplex_3():
    assert betti_vector(zk_cohomology(full_simplex(3))) == [1, 0, 0, 0, 0, 0, 0]


@pytest.mark.parametrize("n", range(2, 9))
def test_disjoint_points_match_arrangement_formula(n):
    Z = zk_cohomology(disjoint_points(n))
    assert trim(betti_vector(Z)) == arrangement_betti(n)
    assert torsion_entries(Z) == []
    assert all(not s.group.torsion for s in Z.summands)


def test_betti_small_cases():
    assert trim(betti_vector(zk_cohomology(disjoint_points(2)))) == [1, 0, 0, 1]
    assert trim(betti_vector(zk_cohomology(disjoint_points(3)))) == [1, 0, 0, 3, 2]


@pytest.mark.parametrize("m", range(2, 7))
def test_simplex_boundary_is_odd_sphere(m):
    Z = zk_cohomology(simplex_boundary(m))
    expected = [0] * (2 * m + 1)
    expected[0] = expected[2 * m - 1] = 1
    assert betti_vector(Z) == expected
    # only the empty set and the whole ground set contribute
    assert [s.sigma for s in Z.summands] == [(), tuple(range(1, m + 1))]


def test_poincare_series():
    assert poincare_series(zk_cohomology(disjoint_points(3))) == [1, 0, 0, 3, 2]
    assert poincare_series(zk_cohomology(disjoint_points(4))) == [1, 0, 0, 6, 8, 3]
    assert poincare_series(zk_cohomology(full_simplex(3))) == [1]
    assert format_poincare([1, 0, 0, 3, 2]) == "1 + 3t^3 + 2t^4"
    assert format_poincare([1, 1]) == "1 + t"


def test_ghost_vertices_contribute_circles():
    # one ghost vertex: Z_K gains an S^1 factor
    K = from_facets(2, [(1,)])
    Z = zk_cohomology(K)
    assert betti_vector(Z) == [1, 1, 0, 0, 0]
    assert Z.summands[1].sigma == (2,)
    assert Z.summands[1].reduced_degree == -1
    assert Z.summands[1].total_degree == 1


def test_torsion_reaches_the_oracle():
    # Z_K for the 6-vertex RP^2 picks up the Z/2 of the full complex
    Z = zk_cohomology(RP2)
    top = [s for s in Z.summands if s.sigma == tuple(range(1, 7))]
    assert top == [type(top[0])((1, 2, 3, 4, 5, 6), 2, AbelianGroup(0, (2,)))]
    assert (top[0].total_degree, 2) in torsion_entries(Z)


complexes = st.builds(lambda m, seed: random_complex(m, random.Random(seed)), st.integers(1, 6), st.integers(0, 2**32))


@settings(max_examples=60, deadline=None)
@given(complexes)
def test_ledger_totalizes(K):
    Z = zk_cohomology(K)
    assert Z.subsets_examined == 2 ** K.m
    assert Z.groups[0] == AbelianGroup(1)
    assert betti_vector(Z)[0] == 1
    sigmas = [s.sigma for s in Z.summands]
    assert sigmas == sorted(sigmas)
    for s in Z.summands:
        assert s.total_degree >= 0
        assert reduced_cohomology(full_subcomplex(K, s.sigma))[s.reduced_degree + 1] == s.group
    for deg, g in enumerate(Z.groups):
        acc = AbelianGroup()
        for s in Z.summands:
            if s.total_degree == deg:
                acc = acc + s.group
        assert acc == g
    if all((v,) in K.faces for v in K.ground):
        assert betti_vector(Z)[1] == 0 and betti_vector(Z)[2] == 0


def test_resource_bound(monkeypatch):
    with pytest.raises(ResourceLimitError):
        zk_cohomology(disjoint_points(5), bound=4)
    monkeypatch.setenv("MAK_SUBSET_BOUND", "3")
    assert subset_bound() == 3
    with pytest.raises(ResourceLimitError):
        zk_cohomology(disjoint_points(4))
    monkeypatch.delenv("MAK_SUBSET_BOUND")
    assert subset_bound() == 16


def test_parallel_matches_serial():
    K = from_facets(7, [(1, 2, 3), (3, 4), (4, 5, 6), (6, 7, 1)])
    assert zk_cohomology(K, parallelism=4) == zk_cohomology(K, parallelism=1)


def test_json_round_trip():
    for K in (disjoint_points(4), RP2, from_facets(3, [])):
        Z = zk_cohomology(K)
        data = Z.to_json()
        assert set(data) == {"m", "betti", "torsion", "ledger"}
        assert ZkCohomology.from_json(data) == Z
