"""Homotopy fibre of the inclusion X1 v .. v Xn -> X1 x .. x Xn.

Two independent routes to the same wedge decomposition:

* :func:`fibre_closed_form` sums, over subsets I with |I| = k >= 2,
  (k - 1) copies of Sigma(Omega X_{i1} ^ .. ^ Omega X_{ik});
* :func:`fibre_recursive` runs the induction
  F_n = (Omega N_{n-1} * Omega X_n) v (F_{n-1} |x Omega X_n),
  N_k = X1 x .. x Xk, through the rewrite engine, starting from
  F_2 = Sigma Omega X1 ^ Omega X2.

For X_i = CP^inf (Omega CP^inf = S^1) the fibre is the complement of the
codimension-two coordinate subspace arrangement, a wedge of (k - 1) C(n, k)
copies of S^{k+1}, k = 2..n.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations, product
from math import comb, prod
from typing import Sequence

from .errors import InputError, ResourceLimitError
from .expr import Generator, HalfSmash, Join, Loop, Product, SpaceExpr, Smash, Sphere, Susp, Wedge, parse, to_text
from .rewrite import WedgeNormalForm, normalize

__all__ = [
    "ENUMERATION_CAP",
    "FibreInput",
    "LedgerRecord",
    "DecompositionResult",
    "fibre_closed_form",
    "fibre_recursive",
    "theorem_counts",
    "total_summands",
    "subset_multiplicities",
    "ledger_normal_form",
]

ENUMERATION_CAP = 20


@dataclass(frozen=True)
class FibreInput:
    """``loop_shapes[i]`` is the declared value of Omega X_{i+1}."""

    n: int
    loop_shapes: tuple

    def __post_init__(self):
        shapes = tuple(self.loop_shapes)
        object.__setattr__(self, "loop_shapes", shapes)
        if self.n < 2:
            raise InputError(f"the fibre needs n >= 2 spaces, got {self.n}")
        if len(shapes) != self.n:
            raise InputError(f"expected {self.n} loop shapes, got {len(shapes)}")
        for s in shapes:
            normalize(s)

    @classmethod
    def circles(cls, n: int) -> "FibreInput":
        """All X_i = CP^inf."""
        return cls(n, (Sphere(1),) * n)

    @classmethod
    def from_strings(cls, n: int, loops: Sequence[str] | None) -> "FibreInput":
        if not loops:
            return cls.circles(n)
        return cls(n, tuple(parse(s) for s in loops))


@dataclass(frozen=True)
class LedgerRecord:
    subset: tuple
    multiplicity: int
    summand: SpaceExpr
    origin: str = "closed-form"

    def to_json(self) -> dict:
        return {
            "subset": list(self.subset),
            "multiplicity": str(self.multiplicity),
            "summand": to_text(self.summand),
            "origin": self.origin,
        }

    @classmethod
    def from_json(cls, data: dict) -> "LedgerRecord":
        return cls(tuple(data["subset"]), int(data["multiplicity"]), parse(data["summand"]), data.get("origin", "closed-form"))


@dataclass(frozen=True)
class DecompositionResult:
    input: FibreInput
    normal_form: WedgeNormalForm
    ledger: tuple | None = None

    def to_json(self) -> dict:
        out = {
            "n": self.input.n,
            "loops": [to_text(s) for s in self.input.loop_shapes],
            **self.normal_form.to_json(),
        }
        if self.ledger is not None:
            out["ledger"] = [r.to_json() for r in self.ledger]
        return out

    @classmethod
    def from_json(cls, data: dict) -> "DecompositionResult":
        ledger = data.get("ledger")
        return cls(
            FibreInput.from_strings(int(data["n"]), data["loops"]),
            WedgeNormalForm.from_json(data),
            None if ledger is None else tuple(LedgerRecord.from_json(r) for r in ledger),
        )


def _summand(shapes: Sequence[SpaceExpr]) -> SpaceExpr:
    return Susp(Smash(tuple(shapes)))


def _check_cap(n: int, what: str) -> None:
    if n > ENUMERATION_CAP:
        raise ResourceLimitError(f"{what} enumerates (n-2)*2^(n-1) summands; refused for n = {n} > {ENUMERATION_CAP}")


def fibre_closed_form(inp: FibreInput, with_ledger: bool = False) -> DecompositionResult:
    """Closed-form decomposition of F_n.

    The normal form is assembled by multiplicity arithmetic: loop shapes are
    grouped by their normal form, and each choice of how many factors to take
    from each group contributes (k - 1) * prod C(c_j, i_j) copies of one
    normalized summand.  No subset enumeration happens unless ``with_ledger``
    is set, which lists all subsets and is refused beyond n = 20.
    """
    groups: dict[WedgeNormalForm, list[SpaceExpr]] = {}
    for s in inp.loop_shapes:
        groups.setdefault(normalize(s), []).append(s)
    reps = [v[0] for v in groups.values()]
    sizes = [len(v) for v in groups.values()]
    nf = WedgeNormalForm()
    for picks in product(*(range(c + 1) for c in sizes)):
        k = sum(picks)
        if k < 2:
            continue
        mult = (k - 1) * prod(comb(c, i) for c, i in zip(sizes, picks))
        factors = [r for r, i in zip(reps, picks) for _ in range(i)]
        nf = nf + normalize(_summand(factors)).scaled(mult)
    ledger = None
    if with_ledger:
        _check_cap(inp.n, "the closed-form ledger")
        ledger = tuple(
            LedgerRecord(tuple(i + 1 for i in idx), k - 1, _summand([inp.loop_shapes[i] for i in idx]))
            for k in range(2, inp.n + 1)
            for idx in combinations(range(inp.n), k)
        )
    return DecompositionResult(inp, nf, ledger)


def fibre_recursive(inp: FibreInput) -> DecompositionResult:
    """Decomposition of F_n by induction on n, every step done by rewriting.

    X_i is modelled as a generator whose loop space is ``loop_shapes[i]``.
    At step j the engine normalizes

        Omega(X1 x .. x X_{j-1}) * Omega X_j   v   F_{j-1} |x Omega X_j

    where F_{j-1} is the previous normal form materialized as a wedge.  The
    half-smash split is legal because F_{j-1} is always a suspension.  The
    ledger records, per summand, the step and the rule that produced it.
    """
    _check_cap(inp.n, "the recursion")
    X = [Generator(f"X{i + 1}", loop=s) for i, s in enumerate(inp.loop_shapes)]
    base = _summand([Loop(X[0]), Loop(X[1])])
    nf = normalize(base)
    ledger = [LedgerRecord((1, 2), 1, _summand(inp.loop_shapes[:2]), "base (n=2)")]
    for j in range(3, inp.n + 1):
        loop_j = Loop(X[j - 1])
        omega_n = Loop(Product(tuple(X[: j - 1])))
        step = Wedge((Join(omega_n, loop_j), HalfSmash(nf.to_expr(), loop_j)))
        nf = normalize(step)
        shape_j = inp.loop_shapes[j - 1]
        new = [
            LedgerRecord(idx + (j,), 1, _summand([inp.loop_shapes[i - 1] for i in idx] + [shape_j]), f"join+prodsusp (n={j})")
            for k in range(1, j)
            for idx in combinations(range(1, j), k)
        ]
        new += [
            LedgerRecord(r.subset + (j,), r.multiplicity, _summand([inp.loop_shapes[i - 1] for i in r.subset] + [shape_j]), f"halfsmash (n={j})")
            for r in ledger
        ]
        ledger += new
    return DecompositionResult(inp, nf, tuple(ledger))


def subset_multiplicities(ledger: Sequence[LedgerRecord]) -> dict[tuple, int]:
    """Total multiplicity per subset, summed over all ledger records."""
    out: Counter = Counter()
    for r in ledger:
        out[r.subset] += r.multiplicity
    return dict(out)


def ledger_normal_form(ledger: Sequence[LedgerRecord]) -> WedgeNormalForm:
    nf = WedgeNormalForm()
    for r in ledger:
        nf = nf + normalize(r.summand).scaled(r.multiplicity)
    return nf


def theorem_counts(n: int) -> dict[int, tuple[int, int]]:
    """k -> (sphere dimension k + 1, multiplicity (k - 1) * C(n, k)) for k = 2..n."""
    if n < 2:
        raise InputError(f"theorem_counts needs n >= 2, got {n}")
    return {k: (k + 1, (k - 1) * comb(n, k)) for k in range(2, n + 1)}


def total_summands(n: int) -> int:
    """Number of spheres in the wedge, sum of (k - 1) * C(n, k) over k = 2..n."""
    if n < 2:
        raise InputError(f"total_summands needs n >= 2, got {n}")
    return sum(m for _, m in theorem_counts(n).values())
