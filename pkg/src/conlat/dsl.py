"""A small expression language for building lattices.

Grammar, loosest to tightest binding (all operators left-associative)::

    expr := hsum ('+' hsum)*          ordinal sum
    hsum := prod ('#' prod)*          horizontal sum
    prod := atom ('*' atom)*          direct product
    atom := 'C' '(' INT ')' | NAME | 'dual' '(' expr ')' | '(' expr ')'

``NAME`` is one of the named lattices in :data:`conlat.construct.NAMES`.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass

from . import construct
from .errors import ParseError, UnknownName
from .lattice import Lattice, dual


class LatticeExpr:
    pass


@dataclass(frozen=True)
class Chain(LatticeExpr):
    k: int


@dataclass(frozen=True)
class Named(LatticeExpr):
    name: str


@dataclass(frozen=True)
class OrdinalSum(LatticeExpr):
    items: tuple


@dataclass(frozen=True)
class HorizontalSum(LatticeExpr):
    items: tuple


@dataclass(frozen=True)
class Product(LatticeExpr):
    items: tuple


@dataclass(frozen=True)
class Dual(LatticeExpr):
    expr: LatticeExpr


_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[+#*()]))")


def tokenize(text: str):
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind, value=None):
        tok = self.tokens[self.i]
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value if value is not None else kind
            got = tok[1] or "end of input"
            raise ParseError(f"expected {want!r}, found {got!r}", tok[2])
        self.i += 1
        return tok

    def binary(self, op, operand, node):
        items = [operand()]
        while self.peek()[:2] == ("op", op):
            self.i += 1
            items.append(operand())
        return items[0] if len(items) == 1 else node(tuple(items))

    def expr(self):
        return self.binary("+", self.hsum, OrdinalSum)

    def hsum(self):
        return self.binary("#", self.prod, HorizontalSum)

    def prod(self):
        return self.binary("*", self.atom, Product)

    def atom(self):
        kind, value, pos = self.peek()
        if (kind, value) == ("op", "("):
            self.i += 1
            inner = self.expr()
            self.take("op", ")")
            return inner
        if kind == "name" and value == "C":
            self.i += 1
            self.take("op", "(")
            k = int(self.take("int")[1])
            self.take("op", ")")
            if k < 1:
                raise ParseError("chain length must be at least 1", pos)
            return Chain(k)
        if kind == "name" and value == "dual":
            self.i += 1
            self.take("op", "(")
            inner = self.expr()
            self.take("op", ")")
            return Dual(inner)
        if kind == "name":
            if value not in construct.FIGURES:
                raise UnknownName(f"unknown lattice name {value!r} at position {pos}")
            self.i += 1
            return Named(value)
        raise ParseError(f"unexpected {value or 'end of input'!r}", pos)


def parse_expr(text: str) -> LatticeExpr:
    p = _Parser(text)
    tree = p.expr()
    p.take("end")
    return tree


_PREC = {OrdinalSum: (1, " + "), HorizontalSum: (2, " # "), Product: (3, " * ")}


def render(e: LatticeExpr) -> str:
    """Inverse of :func:`parse_expr` up to whitespace and redundant parentheses."""
    return _render(e, 0)


def _render(e, outer):
    if isinstance(e, Chain):
        return f"C({e.k})"
    if isinstance(e, Named):
        return e.name
    if isinstance(e, Dual):
        return f"dual({_render(e.expr, 0)})"
    prec, sep = _PREC[type(e)]
    # children bind one level tighter so nested same-operator terms keep their grouping
    text = sep.join(_render(item, prec + 1) for item in e.items)
    return f"({text})" if prec < outer else text


def build(e: LatticeExpr) -> Lattice:
    if isinstance(e, str):
        e = parse_expr(e)
    if isinstance(e, Chain):
        return construct.chain(e.k)
    if isinstance(e, Named):
        return construct.named(e.name)
    if isinstance(e, Dual):
        return dual(build(e.expr))
    parts = [build(item) for item in e.items]
    if isinstance(e, OrdinalSum):
        return construct.ordinal_sum_all(parts)
    if isinstance(e, HorizontalSum):
        return construct.horizontal_sum(parts)
    if isinstance(e, Product):
        return construct.direct_product(parts)
    raise TypeError(f"not a lattice expression: {e!r}")


def evaluate(text: str) -> Lattice:
    return build(parse_expr(text))


_NAMED_SIZES = {"M3": 5, "N5": 5, "B2": 4, "L2xL3": 6,
                "G": 7, "H": 7, "K": 7, "Gp": 7, "Hp": 7, "Kp": 7}


def size_of(e: LatticeExpr) -> int:
    """Element count of ``build(e)`` without building it."""
    if isinstance(e, Chain):
        return e.k
    if isinstance(e, Named):
        return _NAMED_SIZES[e.name]
    if isinstance(e, Dual):
        return size_of(e.expr)
    sizes = [size_of(item) for item in e.items]
    if isinstance(e, OrdinalSum):
        return sum(sizes) - len(sizes) + 1
    if isinstance(e, HorizontalSum):
        return sum(s - 2 for s in sizes) + 2
    out = 1
    for s in sizes:
        out *= s
    return out


def random_expr(rng: random.Random, max_size: int = 12, min_size: int = 1) -> LatticeExpr:
    """A random well-formed expression whose lattice has ``min_size..max_size`` elements."""
    while True:
        e = _random_node(rng, max_size, depth=0)
        if min_size <= size_of(e) <= max_size:
            return e


def _random_node(rng, budget, depth):
    roll = rng.random()
    if depth >= 3 or budget < 3 or roll < 0.3:
        if budget >= 4 and rng.random() < 0.4:
            options = [k for k, s in _NAMED_SIZES.items() if s <= budget]
            return Named(rng.choice(options))
        return Chain(rng.randint(1, min(budget, 5)))
    if roll < 0.6:
        k = rng.randint(2, 3)
        items, used = [], 1
        for _ in range(k):
            child = _random_node(rng, max(1, budget - used + 1), depth + 1)
            items.append(child)
            used += size_of(child) - 1
        return OrdinalSum(tuple(items))
    if roll < 0.85:
        k = rng.randint(2, 3)
        items = []
        for _ in range(k):
            child = _random_node(rng, max(3, budget // k + 2), depth + 1)
            if size_of(child) <= 2:
                child = Chain(3)
            items.append(child)
        return HorizontalSum(tuple(items))
    if roll < 0.95 and budget >= 4:
        a = _random_node(rng, max(1, budget // 2), depth + 1)
        b = _random_node(rng, max(1, budget // max(1, size_of(a))), depth + 1)
        return Product((a, b))
    return Dual(_random_node(rng, budget, depth + 1))
