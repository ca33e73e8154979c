"""Normalizing rewrite engine for pointed-space expressions.

The rules are the decomposition identities used for wedge/product fibres,
taken as axioms:

* ``join``:        X * Y            ->  Sigma (X ^ Y)
* ``prodsusp``:    Sigma (Y1 x .. x Yn) ->  wedge over nonempty subsets I of Sigma (^_{i in I} Yi)
* ``halfsmash``:   A |x B           ->  A v (A ^ B)     when A is a suspension
* ``loop``:        Omega G          ->  declared value;  Omega (X x Y) -> Omega X x Omega Y
* sphere arithmetic, unit/zero laws, flattening, and distribution of
  smash and suspension over wedge.

Normal forms are wedges of smash monomials ``S^s ^ G1 ^ .. ^ Gr``; when no
generator is left the monomial is just a sphere.  Two strategies share the
same rule set: a memoized innermost strategy (the default) and a random
choice among all redexes, used to check that the result does not depend on
the order of rule application.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterator, Mapping

from .errors import NotASphereWedge, RewriteBudgetExceeded, UnsupportedRewrite
from .expr import (
    Generator,
    HalfSmash,
    Join,
    Loop,
    Point,
    Product,
    Smash,
    Sphere,
    SpaceExpr,
    Susp,
    Wedge,
    children,
    parse,
    to_text,
    with_children,
)

__all__ = [
    "DEFAULT_STEP_BUDGET",
    "Monomial",
    "WedgeNormalForm",
    "RULES",
    "normalize",
    "reduce_expr",
    "is_normal",
    "is_suspension",
    "prodsusp_expand",
    "podecomp",
    "betti_of",
]

DEFAULT_STEP_BUDGET = 500_000

Rule = Callable[[SpaceExpr], "SpaceExpr | None"]

S1 = Sphere(1)


def _atom_key(t):
    if isinstance(t, Sphere):
        return (0, t.dim, "")
    return (1, 0, t.name, repr(t))


# ------------------------------------------------------------------- rules
# Each rule returns the rewritten term, or None when it does not apply.


def _flatten(cls):
    def rule(t):
        if not any(isinstance(c, cls) for c in t.children):
            return None
        kids = []
        for c in t.children:
            kids.extend(c.children if isinstance(c, cls) else (c,))
        return cls(tuple(kids))

    return rule


def _drop_points(cls, absorbing: bool):
    def rule(t):
        if not any(isinstance(c, Point) for c in t.children):
            return None
        if absorbing:
            return Point()
        kids = tuple(c for c in t.children if not isinstance(c, Point))
        return cls(kids) if kids else Point()

    return rule


def _single(t):
    return t.children[0] if len(t.children) == 1 else None


def smash_distribute(t: Smash):
    for i, c in enumerate(t.children):
        if isinstance(c, Wedge):
            pre, post = t.children[:i], t.children[i + 1:]
            return Wedge(tuple(Smash(pre + (w,) + post) for w in c.children))
    return None


def smash_spheres(t: Smash):
    idx = [i for i, c in enumerate(t.children) if isinstance(c, Sphere)]
    if len(idx) < 2:
        return None
    merged = Sphere(sum(t.children[i].dim for i in idx))
    kids = [c for i, c in enumerate(t.children) if i not in idx[1:]]
    kids[idx[0]] = merged
    return Smash(tuple(kids))


def smash_unit(t: Smash):
    if len(t.children) < 2 or Sphere(0) not in t.children:
        return None
    kids = tuple(c for c in t.children if c != Sphere(0))
    return Smash(kids) if kids else Sphere(0)


def smash_hoist(t: Smash):
    for i, c in enumerate(t.children):
        if isinstance(c, Susp) and not isinstance(c.child, Product):
            return Smash(t.children[:i] + (S1, c.child) + t.children[i + 1:])
    return None


def smash_product(t: Smash):
    """S^d ^ (Y1 x .. x Yn) ^ rest  ->  S^(d-1) ^ Sigma(Y1 x .. x Yn) ^ rest."""
    p = next((i for i, c in enumerate(t.children) if isinstance(c, Product)), None)
    s = next((i for i, c in enumerate(t.children) if isinstance(c, Sphere) and c.dim >= 1), None)
    if p is None or s is None:
        return None
    kids = list(t.children)
    kids[s] = Sphere(kids[s].dim - 1)
    kids[p] = Susp(kids[p])
    return Smash(tuple(kids))


def smash_sort(t: Smash):
    if not all(isinstance(c, (Sphere, Generator)) for c in t.children):
        return None
    ordered = tuple(sorted(t.children, key=_atom_key))
    return None if ordered == t.children else Smash(ordered)


def prodsusp_expand(factors) -> Wedge:
    """Sigma of a product as the wedge over all nonempty subsets of factors.

    Subsets are listed by size, then lexicographically, giving 2^n - 1
    summands for n factors.
    """
    n = len(factors)
    return Wedge(tuple(
        Susp(Smash(tuple(factors[i] for i in idx)))
        for k in range(1, n + 1)
        for idx in combinations(range(n), k)
    ))


def susp_rule(t: Susp):
    c = t.child
    if isinstance(c, Point):
        return Point()
    if isinstance(c, Sphere):
        return Sphere(c.dim + 1)
    if isinstance(c, Wedge):
        return Wedge(tuple(Susp(w) for w in c.children))
    if isinstance(c, (Generator, Smash)):
        return Smash((S1, c))
    return None


def prodsusp_rule(t: Susp):
    if isinstance(t.child, Product):
        return prodsusp_expand(t.child.children)
    return None


def join_rule(t: Join):
    return Susp(Smash((t.left, t.right)))


def halfsmash_collapse(t: HalfSmash):
    if isinstance(t.left, Point):
        return Point()
    if isinstance(t.right, Point):
        return t.left
    return None


def halfsmash_split(t: HalfSmash):
    # the split needs A to be a suspension, judged on A's normal form
    if isinstance(t.left, Point) or isinstance(t.right, Point):
        return None
    if is_normal(t.left) and is_suspension(t.left):
        return Wedge((t.left, Smash((t.left, t.right))))
    return None


def loop_rule(t: Loop):
    c = t.child
    if isinstance(c, Generator) and c.loop is not None:
        return c.loop
    if isinstance(c, Product):
        return Product(tuple(Loop(x) for x in c.children))
    if isinstance(c, Point):
        return Point()
    return None


RULES: dict[str, Rule] = {
    "wedge-flatten": _flatten(Wedge),
    "wedge-unit": _drop_points(Wedge, absorbing=False),
    "wedge-single": _single,
    "smash-flatten": _flatten(Smash),
    "smash-zero": _drop_points(Smash, absorbing=True),
    "smash-distribute": smash_distribute,
    "smash-spheres": smash_spheres,
    "smash-unit": smash_unit,
    "smash-single": _single,
    "smash-hoist": smash_hoist,
    "smash-product": smash_product,
    "smash-sort": smash_sort,
    "product-flatten": _flatten(Product),
    "product-unit": _drop_points(Product, absorbing=False),
    "product-single": _single,
    "susp": susp_rule,
    "prodsusp": prodsusp_rule,
    "join": join_rule,
    "halfsmash-collapse": halfsmash_collapse,
    "halfsmash": halfsmash_split,
    "loop": loop_rule,
}

_BY_TYPE: dict[type, list[str]] = {
    Wedge: ["wedge-flatten", "wedge-unit", "wedge-single"],
    Smash: [
        "smash-zero", "smash-flatten", "smash-distribute", "smash-spheres", "smash-unit",
        "smash-single", "smash-hoist", "smash-product", "smash-sort",
    ],
    Product: ["product-flatten", "product-unit", "product-single"],
    Susp: ["susp", "prodsusp"],
    Join: ["join"],
    HalfSmash: ["halfsmash-collapse", "halfsmash"],
    Loop: ["loop"],
}


def _root_redexes(t: SpaceExpr) -> Iterator[tuple[str, SpaceExpr]]:
    for name in _BY_TYPE.get(type(t), ()):
        out = RULES[name](t)
        if out is not None:
            yield name, out


def is_normal(t: SpaceExpr) -> bool:
    """True when no rule applies anywhere in ``t``."""
    if next(_root_redexes(t), None) is not None:
        return False
    return all(is_normal(c) for c in children(t))


def is_suspension(t: SpaceExpr) -> bool:
    """Is the irreducible term ``t`` a wedge of suspensions of connected spaces?

    ``S^1`` does not count: it is the suspension of the disconnected ``S^0``.
    """
    if isinstance(t, Point):
        return True
    if isinstance(t, Sphere):
        return t.dim >= 2
    if isinstance(t, Generator):
        return t.suspension
    if isinstance(t, Smash):
        return any(
            (isinstance(c, Sphere) and c.dim >= 1) or (isinstance(c, Generator) and c.suspension)
            for c in t.children
        )
    if isinstance(t, Wedge):
        return all(is_suspension(c) for c in t.children)
    return False


# ------------------------------------------------------------------ engine


class _Budget:
    def __init__(self, limit: int):
        self.limit = limit
        self.steps = 0
        self.fired: Counter = Counter()

    def tick(self, name: str) -> None:
        self.steps += 1
        self.fired[name] += 1
        if self.steps > self.limit:
            raise RewriteBudgetExceeded(f"normalization exceeded {self.limit} rewrite steps")


def _innermost(t: SpaceExpr, memo: dict, budget: _Budget) -> SpaceExpr:
    hit = memo.get(t)
    if hit is not None:
        return hit
    cur = with_children(t, [_innermost(c, memo, budget) for c in children(t)])
    while True:
        step = next(_root_redexes(cur), None)
        if step is None:
            break
        name, new = step
        budget.tick(name)
        cur = with_children(new, [_innermost(c, memo, budget) for c in children(new)])
    memo[t] = cur
    memo[cur] = cur
    return cur


def _redex_table(t: SpaceExpr, memo: dict) -> tuple[list, int]:
    """Root redexes of ``t`` and the total redex count of its subtree (memoized)."""
    # keyed by identity; the node is kept in the value so its id stays unique
    hit = memo.get(id(t))
    if hit is None:
        here = list(_root_redexes(t))
        total = len(here) + sum(_redex_table(c, memo)[1] for c in children(t))
        hit = memo[id(t)] = (here, total, t)
    return hit


def _rewrite_nth(t: SpaceExpr, k: int, memo: dict) -> tuple[str, SpaceExpr]:
    """Fire the ``k``-th redex of ``t`` in preorder; return the rule name and new term."""
    here = _redex_table(t, memo)[0]
    if k < len(here):
        return here[k]
    k -= len(here)
    kids = list(children(t))
    for i, c in enumerate(kids):
        n = _redex_table(c, memo)[1]
        if k < n:
            name, kids[i] = _rewrite_nth(c, k, memo)
            return name, with_children(t, kids)
        k -= n
    raise AssertionError("redex index out of range")


def _random_order(t: SpaceExpr, rng: random.Random, budget: _Budget) -> SpaceExpr:
    # a uniform draw over every redex in the term, counted per shared subtree
    memo: dict = {}
    while True:
        total = _redex_table(t, memo)[1]
        if not total:
            return t
        name, t = _rewrite_nth(t, rng.randrange(total), memo)
        budget.tick(name)


def reduce_expr(
    e: SpaceExpr,
    *,
    rng: random.Random | None = None,
    budget: int = DEFAULT_STEP_BUDGET,
    stats: Counter | None = None,
) -> SpaceExpr:
    """Rewrite ``e`` until no rule applies and return the irreducible term.

    With ``rng`` the next redex is drawn uniformly from all redexes in the
    term; otherwise a memoized innermost-first strategy is used.  ``stats``,
    if given, is updated with the number of firings per rule.
    """
    b = _Budget(budget)
    out = _random_order(e, rng, b) if rng is not None else _innermost(e, {}, b)
    if stats is not None:
        stats.update(b.fired)
    return out


# ------------------------------------------------------------- normal form


@dataclass(frozen=True)
class Monomial:
    """``S^suspension ^ G1 ^ .. ^ Gr`` with at least one generator."""

    suspension: int
    generators: tuple

    def to_expr(self) -> SpaceExpr:
        kids = ((Sphere(self.suspension),) if self.suspension else ()) + self.generators
        return kids[0] if len(kids) == 1 else Smash(kids)

    def __lt__(self, other):
        return self._key() < other._key()

    def _key(self):
        return (self.suspension, tuple(_atom_key(g) for g in self.generators))

    def __str__(self):
        return to_text(self.to_expr())


@dataclass(frozen=True)
class WedgeNormalForm:
    """A wedge of spheres plus residual smash monomials over generators.

    Both parts are stored as sorted ``(key, multiplicity)`` pairs with
    positive multiplicities, so equality is multiset equality.
    """

    spheres: tuple = ()
    residual: tuple = ()

    @classmethod
    def from_counts(cls, spheres: Mapping[int, int] = (), residual: Mapping[Monomial, int] = ()) -> "WedgeNormalForm":
        sp = dict(spheres)
        rs = dict(residual)
        if any(d < 1 for d in sp):
            raise UnsupportedRewrite("S^0 and lower spheres cannot appear in a normal form")
        return cls(
            tuple(sorted((d, c) for d, c in sp.items() if c)),
            tuple(sorted(((mono, c) for mono, c in rs.items() if c), key=lambda p: p[0]._key())),
        )

    @property
    def sphere_multiplicities(self) -> dict[int, int]:
        return dict(self.spheres)

    @property
    def residual_monomials(self) -> dict[Monomial, int]:
        return dict(self.residual)

    def is_sphere_wedge(self) -> bool:
        return not self.residual

    def summand_count(self) -> int:
        return sum(c for _, c in self.spheres) + sum(c for _, c in self.residual)

    def __add__(self, other: "WedgeNormalForm") -> "WedgeNormalForm":
        sp = Counter(self.sphere_multiplicities)
        sp.update(other.sphere_multiplicities)
        rs = Counter(self.residual_monomials)
        rs.update(other.residual_monomials)
        return WedgeNormalForm.from_counts(sp, rs)

    def scaled(self, k: int) -> "WedgeNormalForm":
        return WedgeNormalForm.from_counts(
            {d: c * k for d, c in self.spheres},
            {m: c * k for m, c in self.residual},
        )

    def to_expr(self) -> SpaceExpr:
        """Materialize as a Wedge with one child per summand (multiplicity repeated)."""
        kids = [Sphere(d) for d, c in self.spheres for _ in range(c)]
        kids += [m.to_expr() for m, c in self.residual for _ in range(c)]
        if not kids:
            return Point()
        return kids[0] if len(kids) == 1 else Wedge(tuple(kids))

    def __str__(self):
        parts = [f"S^{d} x{c}" for d, c in self.spheres]
        parts += [f"({m}) x{c}" for m, c in self.residual]
        return " v ".join(parts) if parts else "pt"

    def to_json(self) -> dict:
        return {
            "spheres": [{"dim": d, "multiplicity": str(c)} for d, c in self.spheres],
            "residual": [
                {"suspension": m.suspension, "generators": [g.name for g in m.generators], "multiplicity": str(c)}
                for m, c in self.residual
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "WedgeNormalForm":
        return cls.from_counts(
            {int(s["dim"]): int(s["multiplicity"]) for s in data.get("spheres", [])},
            {
                Monomial(int(r["suspension"]), tuple(parse(g) for g in r["generators"])): int(r["multiplicity"])
                for r in data.get("residual", [])
            },
        )


def _stuck(t: SpaceExpr) -> UnsupportedRewrite:
    if isinstance(t, HalfSmash):
        return UnsupportedRewrite(
            f"half-smash {to_text(t)!r}: left factor is not a suspension of a connected space"
        )
    if isinstance(t, Loop):
        return UnsupportedRewrite(f"no loop rule for {to_text(t.child)!r}")
    if isinstance(t, Product):
        return UnsupportedRewrite(f"product {to_text(t)!r} does not split without a suspension")
    if isinstance(t, Sphere):
        return UnsupportedRewrite("S^0 cannot appear in a reported normal form")
    return UnsupportedRewrite(f"cannot normalize {to_text(t)!r}")


def _collect(t: SpaceExpr, spheres: Counter, residual: Counter) -> None:
    if isinstance(t, Point):
        return
    if isinstance(t, Wedge):
        for c in t.children:
            _collect(c, spheres, residual)
        return
    if isinstance(t, Sphere) and t.dim >= 1:
        spheres[t.dim] += 1
        return
    if isinstance(t, Generator):
        residual[Monomial(0, (t,))] += 1
        return
    if isinstance(t, Smash) and all(isinstance(c, (Sphere, Generator)) for c in t.children):
        s = sum(c.dim for c in t.children if isinstance(c, Sphere))
        gens = tuple(sorted((c for c in t.children if isinstance(c, Generator)), key=_atom_key))
        residual[Monomial(s, gens)] += 1
        return
    raise _stuck(_first_stuck(t) or t)


def _first_stuck(t: SpaceExpr) -> SpaceExpr | None:
    if isinstance(t, (HalfSmash, Loop, Product)) or t == Sphere(0):
        return t
    for c in children(t):
        found = _first_stuck(c)
        if found is not None:
            return found
    return None


def normalize(
    e: SpaceExpr,
    *,
    rng: random.Random | None = None,
    budget: int = DEFAULT_STEP_BUDGET,
    stats: Counter | None = None,
) -> WedgeNormalForm:
    """Canonical wedge decomposition of ``e``.

    Raises :class:`UnsupportedRewrite` if the term gets stuck: a half-smash
    whose left factor is not a suspension, a loop without a declared rule, a
    product outside any suspension, or a bare ``S^0``.

    >>> str(normalize(Susp(Product((Sphere(1), Sphere(1))))))
    'S^2 x2 v S^3 x1'
    """
    t = reduce_expr(e, rng=rng, budget=budget, stats=stats)
    spheres: Counter = Counter()
    residual: Counter = Counter()
    _collect(t, spheres, residual)
    return WedgeNormalForm.from_counts(spheres, residual)


def podecomp(A: SpaceExpr, B: SpaceExpr, C: SpaceExpr) -> SpaceExpr:
    """(A * B) v (C |x B): the pushout of C x B <- A x B -> A, unevaluated."""
    return Wedge((Join(A, B), HalfSmash(C, B)))


def betti_of(w: WedgeNormalForm) -> list[int]:
    """Betti numbers of a wedge of spheres, degree 0 first."""
    if not w.is_sphere_wedge():
        raise NotASphereWedge(f"{w} has non-sphere summands")
    top = max((d for d, _ in w.spheres), default=0)
    out = [0] * (top + 1)
    out[0] = 1
    for d, c in w.spheres:
        out[d] += c
    return out
