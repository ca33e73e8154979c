"""Abstract simplicial complexes on a 1-based ground set.

Faces are stored as sorted tuples of vertex labels.  The full face family is
materialized eagerly at construction; ground sets are expected to stay small
(m of 20 or less), so 2^m memberships are cheap and lookups are O(1).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Iterable, Sequence

from .errors import InputError

VertexSet = tuple  # sorted tuple of ints

__all__ = [
    "VertexSet",
    "SimplicialComplex",
    "from_facets",
    "disjoint_points",
    "simplex_boundary",
    "full_simplex",
    "full_subcomplex",
    "faces_of_dim",
    "parse_facets",
    "read_facet_file",
    "format_facets",
]


def _canon(vertices: Iterable[int]) -> VertexSet:
    return tuple(sorted(set(vertices)))


@dataclass(frozen=True)
class SimplicialComplex:
    """A downward-closed family of subsets of ``ground``.

    ``ground`` defaults to ``1..m``.  Full subcomplexes keep the original
    vertex labels and shrink ``ground`` to the chosen subset, so a vertex in
    ``ground`` that lies in no face is a ghost vertex.
    """

    m: int
    facets: tuple
    faces: frozenset = field(repr=False)
    ground: VertexSet | None = field(repr=False, default=None)

    def __post_init__(self):
        if self.ground is None:
            object.__setattr__(self, "ground", tuple(range(1, self.m + 1)))

    def __contains__(self, face) -> bool:
        return _canon(face) in self.faces

    @property
    def dim(self) -> int:
        return max(len(f) for f in self.facets) - 1 if self.facets else -1

    @property
    def vertices(self) -> VertexSet:
        return tuple(sorted(f[0] for f in self.faces if len(f) == 1))

    def f_vector(self) -> list[int]:
        """Face counts by dimension, starting at dimension -1."""
        counts = [0] * (self.dim + 2)
        for f in self.faces:
            counts[len(f)] += 1
        return counts


def _build(m: int, facets: Iterable[VertexSet], ground: VertexSet) -> SimplicialComplex:
    candidates = sorted(set(facets), key=lambda f: (-len(f), f))
    maximal: list[VertexSet] = []
    for f in candidates:
        fs = set(f)
        if not any(fs <= set(g) for g in maximal):
            maximal.append(f)
    faces = {()}
    for f in maximal:
        for k in range(1, len(f) + 1):
            faces.update(combinations(f, k))
    # the empty facet is implied by the empty face and never listed
    facet_tuple = tuple(sorted((f for f in maximal if f), key=lambda f: (len(f), f)))
    return SimplicialComplex(m=m, facets=facet_tuple, faces=frozenset(faces), ground=ground)


def from_facets(m: int, facets: Iterable[Iterable[int]]) -> SimplicialComplex:
    """Downward closure of ``facets`` on the ground set ``1..m``.

    Redundant facets (contained in another facet) are dropped.  An empty
    facet list gives the empty complex ``{()}``.

    >>> from_facets(3, [{1, 2, 3}, {1, 2}]).facets
    ((1, 2, 3),)
    """
    if m < 0:
        raise InputError(f"ground-set size must be nonnegative, got {m}")
    canon = [_canon(f) for f in facets]
    if m == 0 and any(canon):
        raise InputError("m = 0 admits no nonempty facets")
    for f in canon:
        for v in f:
            if not isinstance(v, int) or not 1 <= v <= m:
                raise InputError(f"vertex {v!r} outside 1..{m}")
    return _build(m, canon, tuple(range(1, m + 1)))


def disjoint_points(n: int) -> SimplicialComplex:
    """``n`` isolated vertices; the codimension-two arrangement's complex."""
    if n < 1:
        raise InputError(f"disjoint_points needs n >= 1, got {n}")
    return from_facets(n, [(i,) for i in range(1, n + 1)])


def full_simplex(m: int) -> SimplicialComplex:
    if m < 1:
        raise InputError(f"full_simplex needs m >= 1, got {m}")
    return from_facets(m, [range(1, m + 1)])


def simplex_boundary(m: int) -> SimplicialComplex:
    """Boundary of the (m-1)-simplex: all (m-1)-subsets of ``1..m``."""
    if m < 2:
        raise InputError(f"simplex_boundary needs m >= 2, got {m}")
    return from_facets(m, combinations(range(1, m + 1), m - 1))


def full_subcomplex(K: SimplicialComplex, sigma: Iterable[int]) -> SimplicialComplex:
    """All faces of ``K`` contained in ``sigma``, labels preserved."""
    sig = _canon(sigma)
    if not set(sig) <= set(K.ground):
        raise InputError(f"{sig} is not a subset of the ground set {K.ground}")
    s = set(sig)
    restricted = [tuple(v for v in f if v in s) for f in K.facets]
    return _build(K.m, restricted, sig)


def faces_of_dim(K: SimplicialComplex, d: int) -> list[VertexSet]:
    """Faces with ``d + 1`` vertices in lexicographic order."""
    if d < -1:
        return []
    return sorted(f for f in K.faces if len(f) == d + 1)


def parse_facets(text: str) -> SimplicialComplex:
    """Parse the facet-file format.

    First non-comment line is ``m``; every later nonempty line is one facet
    of space-separated 1-based labels.  Lines starting with ``#`` are skipped.
    """
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise InputError("facet file is empty: the first line must give m")
    try:
        m = int(lines[0])
        facets = [[int(tok) for tok in ln.split()] for ln in lines[1:]]
    except ValueError as exc:
        raise InputError(f"bad facet file: {exc}") from None
    return from_facets(m, facets)


def read_facet_file(path: str | Path) -> SimplicialComplex:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read facet file {path}: {exc.strerror}") from None
    return parse_facets(text)


def format_facets(K: SimplicialComplex) -> str:
    """Inverse of :func:`parse_facets`."""
    return "\n".join([str(K.m)] + [" ".join(map(str, f)) for f in K.facets]) + "\n"


def random_complex(m: int, rng, max_facets: int = 6, density: float = 0.5) -> SimplicialComplex:
    """Random complex for property tests; ``rng`` is a :class:`random.Random`."""
    facets: list[Sequence[int]] = []
    for _ in range(rng.randint(0, max_facets)):
        facets.append([v for v in range(1, m + 1) if rng.random() < density])
    return from_facets(m, facets)
