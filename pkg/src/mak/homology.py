"""Exact integral (co)homology of simplicial complexes.

Everything runs on Python ints, so there is no overflow however large the
intermediate Smith-form entries grow.  The chain complex is augmented: the
empty face spans degree -1 and the zeroth differential is the augmentation.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

from .simplicial import SimplicialComplex, faces_of_dim

__all__ = [
    "IntegerMatrix",
    "SmithForm",
    "AbelianGroup",
    "boundary_matrix",
    "smith_normal_form",
    "reduced_homology",
    "reduced_cohomology",
]


@dataclass(frozen=True)
class IntegerMatrix:
    rows: int
    cols: int
    entries: tuple  # tuple of row tuples

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntegerMatrix":
        entries = tuple(tuple(int(x) for x in r) for r in rows)
        if cols is None:
            cols = len(entries[0]) if entries else 0
        if any(len(r) != cols for r in entries):
            raise ValueError("ragged matrix")
        return cls(len(entries), cols, entries)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntegerMatrix":
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    def transpose(self) -> "IntegerMatrix":
        return IntegerMatrix(self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else tuple((() for _ in range(self.cols))))

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        cols = list(zip(*other.entries)) if other.rows else [()] * other.cols
        out = tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.entries)
        return IntegerMatrix(self.rows, other.cols, out)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.entries for x in r)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]


@dataclass(frozen=True)
class SmithForm:
    invariants: tuple  # d1 | d2 | ... , all positive

    @property
    def rank(self) -> int:
        return len(self.invariants)


def _chain(coefficients: Iterable[int]) -> tuple:
    """Rewrite a list of cyclic orders as an invariant-factor chain."""
    c = [abs(int(x)) for x in coefficients]
    if any(x == 0 for x in c):
        raise ValueError("cyclic order 0 is a free summand, not torsion")
    for i in range(len(c)):
        for j in range(i + 1, len(c)):
            a, b = c[i], c[j]
            g = gcd(a, b)
            c[i], c[j] = g, a // g * b
    return tuple(sorted(x for x in c if x > 1))


@dataclass(frozen=True)
class AbelianGroup:
    """Z^free_rank + Z/t1 + ... + Z/tr with t1 | t2 | ... | tr, each ti >= 2."""

    free_rank: int = 0
    torsion: tuple = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        t = tuple(self.torsion)
        if any(x < 2 for x in t) or any(t[i + 1] % t[i] for i in range(len(t) - 1)):
            raise ValueError(f"torsion {t} is not a divisibility chain of integers >= 2")
        object.__setattr__(self, "torsion", t)

    @classmethod
    def from_cyclic(cls, free_rank: int, orders: Iterable[int] = ()) -> "AbelianGroup":
        return cls(free_rank, _chain(orders))

    def __add__(self, other: "AbelianGroup") -> "AbelianGroup":
        return AbelianGroup.from_cyclic(self.free_rank + other.free_rank, self.torsion + other.torsion)

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    @classmethod
    def from_json(cls, data: dict) -> "AbelianGroup":
        return cls(int(data["free_rank"]), tuple(int(t) for t in data["torsion"]))


def boundary_matrix(K: SimplicialComplex, d: int) -> IntegerMatrix:
    """Matrix of the differential C_d -> C_{d-1} in the lexicographic face bases.

    Column j is the boundary of the j-th d-face: deleting the vertex in
    position i carries the sign (-1)^i.  For d = 0 this is the augmentation,
    a single row of ones.
    """
    if d < 0:
        return IntegerMatrix.zeros(0, len(faces_of_dim(K, d)))
    src = faces_of_dim(K, d)
    tgt = faces_of_dim(K, d - 1)
    index = {f: i for i, f in enumerate(tgt)}
    rows = [[0] * len(src) for _ in tgt]
    for j, face in enumerate(src):
        for i in range(len(face)):
            rows[index[face[:i] + face[i + 1:]]][j] = -1 if i % 2 else 1
    return IntegerMatrix(len(tgt), len(src), tuple(map(tuple, rows)))


def smith_normal_form(M: IntegerMatrix | Sequence[Sequence[int]]) -> SmithForm:
    """Invariant factors of an integer matrix.

    Pivots are chosen with minimal nonzero absolute value, which keeps entry
    growth modest on the boundary matrices seen here.

    >>> smith_normal_form([[2, 4], [6, 8]]).invariants
    (2, 4)
    """
    if not isinstance(M, IntegerMatrix):
        M = IntegerMatrix.from_rows(M)
    a = M.tolist()
    nr, nc = M.rows, M.cols
    diag: list[int] = []
    t = 0
    while t < min(nr, nc):
        best = None
        for i in range(t, nr):
            row = a[i]
            for j in range(t, nc):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        a[t], a[pi] = a[pi], a[t]
        if pj != t:
            for row in a:
                row[t], row[pj] = row[pj], row[t]
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, nr):
                x = a[i][t]
                if x:
                    q = x // p
                    ri, rt = a[i], a[t]
                    for j in range(t, nc):
                        if rt[j]:
                            ri[j] -= q * rt[j]
                    if ri[t]:
                        dirty = True
            rt = a[t]
            for j in range(t + 1, nc):
                x = rt[j]
                if x:
                    q = x // p
                    for i in range(t, nr):
                        if a[i][t]:
                            a[i][j] -= q * a[i][t]
                    if rt[j]:
                        dirty = True
            if dirty:
                # a remainder smaller than the pivot survived: move it to (t, t)
                best = None
                for i in range(t, nr):
                    x = a[i][t]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, t)
                for j in range(t, nc):
                    x = a[t][j]
                    if x and abs(x) < best[0]:
                        best = (abs(x), t, j)
                _, pi, pj = best
                a[t], a[pi] = a[pi], a[t]
                if pj != t:
                    for row in a:
                        row[t], row[pj] = row[pj], row[t]
                continue
            bad = next(
                (i for i in range(t + 1, nr) if any(x % p for x in a[i][t + 1:])),
                None,
            )
            if bad is None:
                break
            # enforce divisibility: fold the offending row into the pivot row
            rt, rb = a[t], a[bad]
            for j in range(t, nc):
                rt[j] += rb[j]
        diag.append(abs(a[t][t]))
        t += 1
    return SmithForm(tuple(diag))


def _chain_dims(K: SimplicialComplex) -> list[int]:
    return [len(faces_of_dim(K, d)) for d in range(-1, K.dim + 1)]


def _smith_by_degree(K: SimplicialComplex, transpose: bool) -> dict[int, SmithForm]:
    out = {}
    for d in range(0, K.dim + 2):
        B = boundary_matrix(K, d)
        out[d] = smith_normal_form(B.transpose() if transpose else B)
    return out


def reduced_homology(K: SimplicialComplex) -> list[AbelianGroup]:
    """Reduced integral homology in degrees -1 .. dim K (list index = degree + 1)."""
    dims = _chain_dims(K)
    snf = _smith_by_degree(K, transpose=False)
    groups = []
    for d in range(-1, K.dim + 1):
        n_d = dims[d + 1]
        out_rank = snf[d].rank if d >= 0 else 0
        incoming = snf[d + 1]
        groups.append(AbelianGroup.from_cyclic(n_d - out_rank - incoming.rank, incoming.invariants))
    return groups


def reduced_cohomology(K: SimplicialComplex) -> list[AbelianGroup]:
    """Reduced integral cohomology in degrees -1 .. dim K (list index = degree + 1).

    Computed from the coboundaries (transposed boundary matrices) directly;
    agreement with universal coefficients is left to the tests.
    """
    dims = _chain_dims(K)
    cosnf = _smith_by_degree(K, transpose=True)
    groups = []
    for d in range(-1, K.dim + 1):
        n_d = dims[d + 1]
        outgoing = cosnf[d + 1]  # delta^d = (boundary_{d+1})^T
        incoming = cosnf[d] if d >= 0 else SmithForm(())
        groups.append(AbelianGroup.from_cyclic(n_d - outgoing.rank - incoming.rank, incoming.invariants))
    return groups
