import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mak.errors import InputError
from mak.simplicial import (
    disjoint_points,
    faces_of_dim,
    format_facets,
    from_facets,
    full_simplex,
    full_subcomplex,
    parse_facets,
    random_complex,
    read_facet_file,
    simplex_boundary,
)

HOLLOW_TRIANGLE = [(1, 2), (2, 3), (1, 3)]


def test_from_facets_points():
    K = from_facets(3, [{1}, {2}, {3}])
    assert K.faces == {(), (1,), (2,), (3,)}
    assert K.facets == ((1,), (2,), (3,))


def test_from_facets_hollow_triangle():
    K = from_facets(3, HOLLOW_TRIANGLE)
    assert K.faces == {(), (1,), (2,), (3,), (1, 2), (2, 3), (1, 3)}
    assert K.dim == 1


def test_redundant_facet_dropped():
    K = from_facets(3, [{1, 2, 3}, {1, 2}])
    assert K.facets == ((1, 2, 3),)
    assert len(K.faces) == 8


def test_empty_facet_list_is_empty_complex():
    K = from_facets(4, [])
    assert K.faces == {()}
    assert K.dim == -1
    assert from_facets(0, []).faces == {()}


@pytest.mark.parametrize("m, facets", [(3, [(1, 4)]), (3, [(0,)]), (0, [(1,)]), (-1, [])])
def test_from_facets_rejects_bad_input(m, facets):
    with pytest.raises(InputError):
        from_facets(m, facets)


def test_ghost_vertices_allowed():
    K = from_facets(4, [(1, 2)])
    assert K.vertices == (1, 2)
    assert K.ground == (1, 2, 3, 4)


@pytest.mark.parametrize("n", [1, 3, 5])
def test_disjoint_points(n):
    K = disjoint_points(n)
    assert K.facets == tuple((i,) for i in range(1, n + 1))
    assert len(K.faces) == n + 1


def test_disjoint_points_rejects_zero():
    with pytest.raises(InputError):
        disjoint_points(0)


def test_simplex_boundary():
    assert simplex_boundary(2).faces == disjoint_points(2).faces
    assert simplex_boundary(3).faces == from_facets(3, HOLLOW_TRIANGLE).faces
    K = simplex_boundary(4)
    assert len(K.faces) - 1 == 2**4 - 2
    with pytest.raises(InputError):
        simplex_boundary(1)


def test_full_subcomplex_examples():
    assert full_subcomplex(disjoint_points(5), {1, 3, 4}).faces == {(), (1,), (3,), (4,)}
    assert full_subcomplex(simplex_boundary(4), ()).faces == {()}
    K = full_subcomplex(simplex_boundary(4), {1, 2, 3})
    assert K.facets == ((1, 2, 3),)
    assert K.ground == (1, 2, 3)


def test_full_subcomplex_rejects_foreign_vertices():
    with pytest.raises(InputError):
        full_subcomplex(disjoint_points(3), {4})


def test_faces_of_dim():
    K = from_facets(3, HOLLOW_TRIANGLE)
    assert faces_of_dim(K, 1) == [(1, 2), (1, 3), (2, 3)]
    assert faces_of_dim(K, 2) == []
    assert faces_of_dim(K, -1) == [()]
    assert faces_of_dim(full_simplex(3), 0) == [(1,), (2,), (3,)]


complexes = st.builds(
    lambda m, seed: random_complex(m, random.Random(seed)),
    st.integers(1, 8),
    st.integers(0, 2**32),
)


@settings(max_examples=150, deadline=None)
@given(complexes)
def test_downward_closed(K):
    assert () in K.faces
    for f in K.faces:
        for k in range(len(f)):
            for g in combinations(f, k):
                assert g in K.faces
    for f, g in combinations(K.facets, 2):
        assert not set(f) <= set(g) and not set(g) <= set(f)


@settings(max_examples=100, deadline=None)
@given(complexes, st.data())
def test_full_subcomplex_laws(K, data):
    assert full_subcomplex(K, K.ground) == K
    sigma = data.draw(st.sets(st.sampled_from(K.ground)))
    tau = data.draw(st.sets(st.sampled_from(sorted(sigma)))) if sigma else set()
    Ks = full_subcomplex(K, sigma)
    assert Ks.faces == {f for f in K.faces if set(f) <= sigma}
    assert full_subcomplex(Ks, tau) == full_subcomplex(K, tau)


def test_facet_file_round_trip(tmp_path):
    text = "# four points\n4\n1\n2\n\n# comment\n3\n4\n"
    K = parse_facets(text)
    assert K == disjoint_points(4)
    path = tmp_path / "k.txt"
    path.write_text(format_facets(simplex_boundary(4)))
    assert read_facet_file(path) == simplex_boundary(4)
    assert parse_facets("3\n") == from_facets(3, [])


@pytest.mark.parametrize("text", ["", "# only a comment\n", "x\n1 2\n", "3\n1 a\n", "2\n1 3\n"])
def test_facet_file_errors(text):
    with pytest.raises(InputError):
        parse_facets(text)


def test_missing_facet_file(tmp_path):
    with pytest.raises(InputError):
        read_facet_file(tmp_path / "nope.txt")
