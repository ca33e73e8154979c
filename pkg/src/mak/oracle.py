"""Integral cohomology of the moment-angle complex Z_K.

Uses the Hochster-type splitting

    H^l(Z_K) = sum over sigma in [m] of  H~^{l - |sigma| - 1}(K_sigma; Z)

where K_sigma is the full subcomplex on sigma and H~^{-1}({()}) = Z.  The
arrangement complement U(K) deformation-retracts onto Z_K, so this is also
its cohomology.  Every sigma is an independent computation.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial, reduce
from itertools import combinations
from operator import add

from .errors import ResourceLimitError
from .homology import AbelianGroup, reduced_cohomology
from .simplicial import SimplicialComplex, VertexSet, full_subcomplex

__all__ = [
    "DEFAULT_SUBSET_BOUND",
    "HochsterSummand",
    "ZkCohomology",
    "subset_bound",
    "zk_cohomology",
    "betti_vector",
    "torsion_entries",
    "poincare_series",
    "format_poincare",
]

DEFAULT_SUBSET_BOUND = 16


def subset_bound() -> int:
    """Default bound on m, overridable through ``MAK_SUBSET_BOUND``."""
    raw = os.environ.get("MAK_SUBSET_BOUND")
    if raw is None:
        return DEFAULT_SUBSET_BOUND
    try:
        return int(raw)
    except ValueError:
        raise ResourceLimitError(f"MAK_SUBSET_BOUND must be an integer, got {raw!r}") from None


@dataclass(frozen=True)
class HochsterSummand:
    sigma: VertexSet
    reduced_degree: int
    group: AbelianGroup

    @property
    def total_degree(self) -> int:
        return len(self.sigma) + 1 + self.reduced_degree

    def to_json(self) -> dict:
        return {
            "sigma": list(self.sigma),
            "reduced_degree": self.reduced_degree,
            "free_rank": self.group.free_rank,
            "torsion": list(self.group.torsion),
        }

    @classmethod
    def from_json(cls, data: dict) -> "HochsterSummand":
        return cls(
            tuple(data["sigma"]),
            int(data["reduced_degree"]),
            AbelianGroup(int(data["free_rank"]), tuple(data["torsion"])),
        )


@dataclass(frozen=True)
class ZkCohomology:
    """Graded groups H^0 .. H^{2m} plus the per-subset ledger behind them.

    ``summands`` lists only the nonzero contributions, in lexicographic order
    of sigma; ``subsets_examined`` is always 2^m.
    """

    m: int
    groups: tuple
    summands: tuple
    subsets_examined: int

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "betti": betti_vector(self),
            "torsion": [[deg, t] for deg, t in torsion_entries(self)],
            "ledger": [s.to_json() for s in self.summands],
        }

    @classmethod
    def from_json(cls, data: dict) -> "ZkCohomology":
        m = int(data["m"])
        summands = tuple(HochsterSummand.from_json(s) for s in data["ledger"])
        return cls(m, _totalize(m, summands), summands, 2**m)


def _subsets(ground: VertexSet) -> list[VertexSet]:
    subs = [c for k in range(len(ground) + 1) for c in combinations(ground, k)]
    return sorted(subs)


def _summands_for(K: SimplicialComplex, sigma: VertexSet) -> list[HochsterSummand]:
    Ks = full_subcomplex(K, sigma)
    return [
        HochsterSummand(sigma, d, g)
        for d, g in enumerate(reduced_cohomology(Ks), start=-1)
        if not g.is_trivial()
    ]


def _totalize(m: int, summands) -> tuple:
    buckets: list[list[AbelianGroup]] = [[] for _ in range(2 * m + 1)]
    for s in summands:
        buckets[s.total_degree].append(s.group)
    return tuple(reduce(add, b, AbelianGroup()) for b in buckets)


def zk_cohomology(
    K: SimplicialComplex,
    bound: int | None = None,
    parallelism: int = 1,
) -> ZkCohomology:
    """Cohomology of Z_K from the reduced cohomology of all 2^m full subcomplexes.

    Refuses with :class:`ResourceLimitError` when ``K.m`` exceeds ``bound``
    (default :func:`subset_bound`).  With ``parallelism > 1`` the subsets are
    farmed out to worker processes; the merged ledger order does not depend
    on completion order.
    """
    if bound is None:
        bound = subset_bound()
    if K.m > bound:
        raise ResourceLimitError(
            f"m = {K.m} exceeds the subset bound {bound} (2^{K.m} subcomplexes); "
            "raise it with --subset-bound or MAK_SUBSET_BOUND"
        )
    sigmas = _subsets(K.ground)
    work = partial(_summands_for, K)
    if parallelism > 1 and len(sigmas) > 1:
        with ProcessPoolExecutor(max_workers=parallelism) as pool:
            chunk = max(1, len(sigmas) // (4 * parallelism))
            per_sigma = list(pool.map(work, sigmas, chunksize=chunk))
    else:
        per_sigma = [work(s) for s in sigmas]
    summands = tuple(s for block in per_sigma for s in block)
    return ZkCohomology(K.m, _totalize(K.m, summands), summands, len(sigmas))


def betti_vector(Z: ZkCohomology) -> list[int]:
    """Free ranks of H^0 .. H^{2m}."""
    return [g.free_rank for g in Z.groups]


def torsion_entries(Z: ZkCohomology) -> list[tuple[int, int]]:
    """(degree, coefficient) pairs for every torsion summand."""
    return [(deg, t) for deg, g in enumerate(Z.groups) for t in g.torsion]


def poincare_series(Z: ZkCohomology) -> list[int]:
    """Coefficients of sum b_l t^l, trailing zeros dropped."""
    coeffs = betti_vector(Z)
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def format_poincare(coeffs: list[int], var: str = "t") -> str:
    terms = []
    for deg, c in enumerate(coeffs):
        if not c:
            continue
        if deg == 0:
            terms.append(str(c))
        else:
            mono = var if deg == 1 else f"{var}^{deg}"
            terms.append(mono if c == 1 else f"{c}{mono}")
    return " + ".join(terms) or "0"
