import random
from collections import Counter
from itertools import combinations
from math import gcd

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.matrices.normalforms import invariant_factors

from mak.homology import (
    AbelianGroup,
    IntegerMatrix,
    boundary_matrix,
    reduced_cohomology,
    reduced_homology,
    smith_normal_form,
)
from mak.simplicial import disjoint_points, faces_of_dim, from_facets, full_simplex, random_complex

from oracles import bareiss_rank, det, determinantal_invariants, rank_mod_p

TRIANGLE = from_facets(3, [(1, 2), (2, 3), (1, 3)])
RP2 = from_facets(
    6,
    [(1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6),
     (2, 3, 5), (3, 4, 6), (2, 4, 5), (3, 5, 6), (2, 4, 6)],
)

Z = AbelianGroup(1)
ZERO = AbelianGroup()


def test_rp2_fixture_is_a_closed_surface():
    edges = Counter(e for f in RP2.facets for e in combinations(f, 2))
    assert len(edges) == 15 and set(edges.values()) == {2}
    assert RP2.f_vector() == [1, 6, 15, 10]


# ------------------------------------------------------------ boundary maps


def test_boundary_matrix_triangle_edges():
    B = boundary_matrix(TRIANGLE, 1)
    # columns: {1,2}, {1,3}, {2,3}; rows: {1}, {2}, {3}
    assert B.tolist() == [[-1, -1, 0], [1, 0, -1], [0, 1, 1]]


def test_augmentation_row():
    assert boundary_matrix(TRIANGLE, 0).tolist() == [[1, 1, 1]]


@pytest.mark.parametrize("d", [0, 1])
def test_boundary_squares_to_zero_on_simplex(d):
    K = full_simplex(3)
    assert (boundary_matrix(K, d) @ boundary_matrix(K, d + 1)).is_zero()


def test_boundary_squares_to_zero_random():
    rng = random.Random(20261017)
    for _ in range(200):
        K = random_complex(rng.randint(1, 8), rng)
        for d in range(0, K.dim + 1):
            assert (boundary_matrix(K, d) @ boundary_matrix(K, d + 1)).is_zero()


# ------------------------------------------------------------ smith form


def test_smith_examples():
    # gcd of entries is 2 and |det| = 8, so the invariants are (2, 4)
    assert determinantal_invariants([[2, 4], [6, 8]]) == (2, 4)
    assert smith_normal_form([[2, 4], [6, 8]]).invariants == (2, 4)
    assert smith_normal_form(IntegerMatrix.zeros(3, 2)).invariants == ()
    assert smith_normal_form([[1, 0, 0], [0, 1, 0], [0, 0, 1]]).invariants == (1, 1, 1)
    assert smith_normal_form(IntegerMatrix.zeros(0, 4)).invariants == ()


small_matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


@settings(max_examples=300, deadline=None)
@given(small_matrices)
def test_smith_matches_minor_gcds(M):
    assert smith_normal_form(M).invariants == determinantal_invariants(M)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 8).flatmap(
    lambda r: st.lists(st.lists(st.integers(-10**30, 10**30), min_size=5, max_size=5), min_size=r, max_size=r)
))
def test_smith_matches_sympy_big_entries(M):
    ours = smith_normal_form(M)
    theirs = tuple(abs(int(x)) for x in invariant_factors(sympy.Matrix(M)) if x != 0)
    assert ours.invariants == theirs
    assert ours.rank <= min(len(M), 5)
    assert all(b % a == 0 for a, b in zip(ours.invariants, ours.invariants[1:]))


def test_smith_rank_matches_bareiss():
    rng = random.Random(7)
    for _ in range(100):
        K = random_complex(rng.randint(2, 7), rng)
        for d in range(0, K.dim + 2):
            B = boundary_matrix(K, d)
            assert smith_normal_form(B).rank == bareiss_rank(B.tolist())


def test_rp2_smith_form_against_minors():
    B = boundary_matrix(RP2, 2).tolist()
    assert (len(B), len(B[0])) == (15, 10)
    # full rank over Q, one rank drop mod 2, none mod 3
    assert bareiss_rank(B) == 10 and rank_mod_p(B, 2) == 9 and rank_mod_p(B, 3) == 10
    # product of the invariants is the gcd of the maximal minors; mod-2 rank makes it even
    D = 0
    for rows in combinations(range(15), 10):
        D = gcd(D, det([B[r] for r in rows]))
        if D == 2:
            break
    assert D == 2
    assert smith_normal_form(B).invariants == (1,) * 9 + (2,)


# --------------------------------------------------------------- homology


def test_disjoint_points_homology():
    for n in range(1, 7):
        H = reduced_homology(disjoint_points(n))
        assert H == [ZERO, AbelianGroup(n - 1)]


def test_triangle_homology():
    assert reduced_homology(TRIANGLE) == [ZERO, ZERO, Z]
    assert reduced_cohomology(TRIANGLE) == [ZERO, ZERO, Z]


def test_rp2_homology_and_cohomology():
    H = reduced_homology(RP2)
    assert H == [ZERO, ZERO, AbelianGroup(0, (2,)), ZERO]
    C = reduced_cohomology(RP2)
    assert C == [ZERO, ZERO, ZERO, AbelianGroup(0, (2,))]


def test_empty_complex():
    K = from_facets(3, [])
    assert reduced_homology(K) == [Z]
    assert reduced_cohomology(K) == [Z]


def test_full_simplex_acyclic():
    for m in range(1, 6):
        assert all(g.is_trivial() for g in reduced_homology(full_simplex(m)))
        assert all(g.is_trivial() for g in reduced_cohomology(full_simplex(m)))


def _random_complexes(seed, count):
    rng = random.Random(seed)
    return [random_complex(rng.randint(1, 7), rng, max_facets=5) for _ in range(count)]


@pytest.mark.parametrize("K", _random_complexes(3, 60))
def test_euler_relation(K):
    H = reduced_homology(K)
    betti_sum = sum((-1) ** d * g.free_rank for d, g in enumerate(H, start=-1))
    face_sum = sum((-1) ** (len(f) - 1) for f in K.faces)
    assert betti_sum == face_sum


@pytest.mark.parametrize("K", _random_complexes(11, 60) + [RP2])
def test_universal_coefficients(K):
    H = reduced_homology(K)
    C = reduced_cohomology(K)
    assert [g.free_rank for g in H] == [g.free_rank for g in C]
    # torsion moves up one degree in cohomology
    assert [g.torsion for g in H] == [g.torsion for g in C[1:]] + [()]
    assert C[0].torsion == ()


@pytest.mark.parametrize("K", _random_complexes(5, 30))
def test_homology_rank_formula(K):
    H = reduced_homology(K)
    for d, g in enumerate(H, start=-1):
        n_d = len(faces_of_dim(K, d))
        out = bareiss_rank(boundary_matrix(K, d).tolist()) if d >= 0 else 0
        inc = bareiss_rank(boundary_matrix(K, d + 1).tolist())
        assert g.free_rank == n_d - out - inc


# ----------------------------------------------------------- abelian group


def test_abelian_group_normalization():
    G = AbelianGroup.from_cyclic(1, [6, 4, 1])
    assert G.torsion == (2, 12)
    assert str(G) == "Z + Z/2 + Z/12"
    assert AbelianGroup.from_cyclic(0, [2, 3]) == AbelianGroup(0, (6,))
    assert str(AbelianGroup()) == "0"
    assert (AbelianGroup(2, (2,)) + AbelianGroup(1, (4,))) == AbelianGroup(3, (2, 4))


@pytest.mark.parametrize("torsion", [(1,), (4, 2), (0,), (3, 5)])
def test_abelian_group_rejects_bad_chains(torsion):
    with pytest.raises(ValueError):
        AbelianGroup(0, torsion)


@settings(max_examples=200)
@given(st.lists(st.integers(2, 60), max_size=6))
def test_cyclic_decomposition_preserves_order(orders):
    G = AbelianGroup.from_cyclic(0, orders)
    prod_in = 1
    for o in orders:
        prod_in *= o
    prod_out = 1
    for t in G.torsion:
        prod_out *= t
    assert prod_in == prod_out


def test_abelian_group_json_round_trip():
    G = AbelianGroup(3, (2, 6))
    assert AbelianGroup.from_json(G.to_json()) == G
