"""Formal pointed-space expressions, their text syntax, and a printer.

Grammar (loosest binding first; ``v``, ``x`` and ``^`` are n-ary, ``*`` and
``|x`` associate to the left)::

    wedge    := join ( "v" join )*
    join     := half ( "*" half )*
    half     := product ( "|x" product )*
    product  := smash ( "x" smash )*
    smash    := unary ( "^" unary )*
    unary    := "Sigma" unary | "Omega" unary | atom
    atom     := "S^" INT | "pt" | NAME | "(" wedge ")"

``CP_inf`` is a built-in generator whose loop space is ``S^1``.  Any other
NAME is a generator with no loop rule, unless declared via ``generators=``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping

from .errors import ParseError

__all__ = [
    "SpaceExpr",
    "Point",
    "Sphere",
    "Generator",
    "Wedge",
    "Smash",
    "Susp",
    "Join",
    "HalfSmash",
    "Product",
    "Loop",
    "CP_INF",
    "children",
    "with_children",
    "parse",
    "to_text",
    "size",
]


class SpaceExpr:
    """Base of the immutable expression nodes.  Hashes are cached."""

    __slots__ = ()

    def __hash__(self):
        try:
            return self.__dict__["_h"]
        except KeyError:
            h = hash((type(self).__name__,) + tuple(getattr(self, f) for f in self.__dataclass_fields__))
            object.__setattr__(self, "_h", h)
            return h

    def __str__(self):
        return to_text(self)


class _NAry(SpaceExpr):
    __slots__ = ()

    def __post_init__(self):
        kids = tuple(self.children)
        if not kids:
            raise ValueError(f"{type(self).__name__} needs at least one child")
        object.__setattr__(self, "children", kids)


@dataclass(frozen=True, eq=True)
class Point(SpaceExpr):
    __hash__ = SpaceExpr.__hash__


@dataclass(frozen=True, eq=True)
class Sphere(SpaceExpr):
    dim: int
    __hash__ = SpaceExpr.__hash__

    def __post_init__(self):
        if self.dim < 0:
            raise ValueError("sphere dimension must be nonnegative")


@dataclass(frozen=True, eq=True)
class Generator(SpaceExpr):
    """A named connected space.

    ``loop`` is the declared value of its loop space, if any; ``suspension``
    declares the space to be a suspension of a connected space.
    """

    name: str
    loop: SpaceExpr | None = None
    suspension: bool = False
    __hash__ = SpaceExpr.__hash__


@dataclass(frozen=True, eq=True)
class Wedge(_NAry):
    children: tuple
    __hash__ = SpaceExpr.__hash__


@dataclass(frozen=True, eq=True)
class Smash(_NAry):
    children: tuple
    __hash__ = SpaceExpr.__hash__


@dataclass(frozen=True, eq=True)
class Product(_NAry):
    children: tuple
    __hash__ = SpaceExpr.__hash__


@dataclass(frozen=True, eq=True)
class Susp(SpaceExpr):
    child: SpaceExpr
    __hash__ = SpaceExpr.__hash__


@dataclass(frozen=True, eq=True)
class Loop(SpaceExpr):
    child: SpaceExpr
    __hash__ = SpaceExpr.__hash__


@dataclass(frozen=True, eq=True)
class Join(SpaceExpr):
    left: SpaceExpr
    right: SpaceExpr
    __hash__ = SpaceExpr.__hash__


@dataclass(frozen=True, eq=True)
class HalfSmash(SpaceExpr):
    """``left |x right`` = (left x right) / (* x right)."""

    left: SpaceExpr
    right: SpaceExpr
    __hash__ = SpaceExpr.__hash__


CP_INF = Generator("CP_inf", loop=Sphere(1))


def children(e: SpaceExpr) -> tuple:
    if isinstance(e, (Wedge, Smash, Product)):
        return e.children
    if isinstance(e, (Susp, Loop)):
        return (e.child,)
    if isinstance(e, (Join, HalfSmash)):
        return (e.left, e.right)
    return ()


def with_children(e: SpaceExpr, kids) -> SpaceExpr:
    """Copy of ``e`` with new children; returns ``e`` itself if nothing changed."""
    old = children(e)
    kids = tuple(kids)
    if len(kids) == len(old) and all(a is b for a, b in zip(kids, old)):
        return e
    if isinstance(e, (Wedge, Smash, Product)):
        return type(e)(kids)
    if isinstance(e, (Susp, Loop)):
        return type(e)(kids[0])
    if isinstance(e, (Join, HalfSmash)):
        return type(e)(kids[0], kids[1])
    return e


def size(e: SpaceExpr) -> int:
    return 1 + sum(size(c) for c in children(e))


# ---------------------------------------------------------------- printing

_PREC = {Wedge: 0, Join: 1, HalfSmash: 2, Product: 3, Smash: 4}
_INFIX = {Wedge: " v ", Join: " * ", HalfSmash: " |x ", Product: " x ", Smash: " ^ "}


def to_text(e: SpaceExpr) -> str:
    """Render ``e`` in the parser's syntax; ``parse(to_text(e)) == e``.

    One-child wedges, smashes and products print as their only child.

    Declared loop rules of generators other than ``CP_inf`` are not part of
    the text syntax and do not survive the round trip.
    """
    if isinstance(e, Point):
        return "pt"
    if isinstance(e, Sphere):
        return f"S^{e.dim}"
    if isinstance(e, Generator):
        return e.name
    if isinstance(e, (Susp, Loop)):
        op = "Sigma" if isinstance(e, Susp) else "Omega"
        return f"{op} {_wrap(e.child, 5)}"
    kids = children(e)
    if len(kids) == 1:
        return to_text(kids[0])
    prec = _PREC[type(e)]
    return _INFIX[type(e)].join(_wrap(c, prec + 1) for c in kids)


def _wrap(e: SpaceExpr, min_prec: int) -> str:
    while type(e) in (Wedge, Smash, Product) and len(e.children) == 1:
        e = e.children[0]
    text = to_text(e)
    if type(e) in _PREC and _PREC[type(e)] < min_prec:
        return f"({text})"
    return text


# ----------------------------------------------------------------- parsing

_TOKEN = re.compile(
    r"\s*(?:(?P<sphere>S\^(?P<dim>\d+))|(?P<half>\|x)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<punct>[()^*]))"
)
_KEYWORDS = {"v", "x", "Sigma", "Omega", "pt"}


def _tokenize(text: str) -> list[tuple[str, str]]:
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if mt is None or mt.end() == pos:
            raise ParseError(f"unexpected character {text[pos:].lstrip()[:1]!r} at offset {pos}")
        pos = mt.end()
        if mt.group("sphere"):
            out.append(("sphere", mt.group("dim")))
        elif mt.group("half"):
            out.append(("op", "|x"))
        elif mt.group("name"):
            word = mt.group("name")
            out.append(("op" if word in _KEYWORDS else "name", word))
        else:
            out.append(("op", mt.group("punct")))
    return out


class _Parser:
    def __init__(self, tokens, generators: Mapping[str, Generator]):
        self.toks = tokens
        self.i = 0
        self.generators = generators

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, value=None):
        tok = self.peek()
        if tok[0] is None:
            raise ParseError("unexpected end of expression")
        if value is not None and tok[1] != value:
            raise ParseError(f"expected {value!r}, found {tok[1]!r}")
        self.i += 1
        return tok

    def nary(self, op, sub, cls):
        items = [sub()]
        while self.peek() == ("op", op):
            self.take()
            items.append(sub())
        return items[0] if len(items) == 1 else cls(tuple(items))

    def binary(self, op, sub, cls):
        left = sub()
        while self.peek() == ("op", op):
            self.take()
            left = cls(left, sub())
        return left

    def wedge(self):
        return self.nary("v", self.join, Wedge)

    def join(self):
        return self.binary("*", self.half, Join)

    def half(self):
        return self.binary("|x", self.product, HalfSmash)

    def product(self):
        return self.nary("x", self.smash, Product)

    def smash(self):
        return self.nary("^", self.unary, Smash)

    def unary(self):
        kind, val = self.peek()
        if (kind, val) == ("op", "Sigma"):
            self.take()
            return Susp(self.unary())
        if (kind, val) == ("op", "Omega"):
            self.take()
            return Loop(self.unary())
        return self.atom()

    def atom(self):
        kind, val = self.take()
        if kind == "sphere":
            return Sphere(int(val))
        if (kind, val) == ("op", "pt"):
            return Point()
        if kind == "name":
            if val in self.generators:
                return self.generators[val]
            return CP_INF if val == CP_INF.name else Generator(val)
        if (kind, val) == ("op", "("):
            inner = self.wedge()
            self.take(")")
            return inner
        raise ParseError(f"unexpected token {val!r}")


def parse(text: str, generators: Mapping[str, Generator] | None = None) -> SpaceExpr:
    """Parse the text syntax into a :class:`SpaceExpr`.

    >>> parse("Sigma (S^1 x S^1)")
    Susp(child=Product(children=(Sphere(dim=1), Sphere(dim=1))))
    """
    p = _Parser(_tokenize(text), generators or {})
    if not p.toks:
        raise ParseError("empty expression")
    e = p.wedge()
    if p.peek()[0] is not None:
        raise ParseError(f"trailing input at {p.peek()[1]!r}")
    return e
