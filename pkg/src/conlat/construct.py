"""Chains, ordinal sums, horizontal sums, direct products and named lattices."""
from __future__ import annotations

from functools import reduce
from itertools import product

from .errors import LatticeError, SummandTooSmall, UnknownName
from .lattice import Lattice, bits, dual, lattice_from_upsets, validate_lattice


def chain(k: int) -> Lattice:
    if k < 1:
        raise LatticeError(f"chain length must be at least 1, got {k}")
    return validate_lattice(k, [(i, i + 1) for i in range(k - 1)])


def _names(L: Lattice):
    return L.names or tuple(str(i) for i in range(L.n))


def ordinal_sum(L: Lattice, M: Lattice) -> Lattice:
    """Stack ``M`` on ``L``, identifying the top of ``L`` with the bottom of ``M``."""
    shift = L.n - 1
    covers = list(L.covers) + [(a + shift, b + shift) for a, b in M.covers]
    ln, mn = _names(L), _names(M)
    names = [f"l{s}" for s in ln] + [f"r{s}" for s in mn[1:]]
    return validate_lattice(L.n + M.n - 1, covers, names)


def ordinal_sum_all(lattices) -> Lattice:
    lattices = list(lattices)
    if not lattices:
        raise LatticeError("ordinal sum of an empty list")
    return reduce(ordinal_sum, lattices)


def horizontal_sum(summands) -> Lattice:
    """Glue the summands along a common bottom and top.

    Every summand must have more than two elements.
    """
    summands = list(summands)
    if len(summands) < 2:
        raise LatticeError("a horizontal sum needs at least two summands")
    for i, S in enumerate(summands):
        if S.n <= 2:
            raise SummandTooSmall(
                f"summand {i} has {S.n} elements; horizontal summands need more than 2")
    n = sum(S.n - 2 for S in summands) + 2
    top = n - 1
    covers = []
    names = ["0"]
    offset = 1
    for i, S in enumerate(summands):

        def place(x, S=S, offset=offset):
            if x == 0:
                return 0
            if x == S.n - 1:
                return top
            return offset + x - 1

        covers.extend((place(a), place(b)) for a, b in S.covers)
        names.extend(f"{i}.{s}" for s in _names(S)[1:-1])
        offset += S.n - 2
    names.append("1")
    return validate_lattice(n, covers, names)


def direct_product(factors) -> Lattice:
    factors = list(factors)
    if not factors:
        raise LatticeError("direct product needs at least one factor")
    if len(factors) == 1:
        return factors[0]
    tuples = list(product(*(range(F.n) for F in factors)))
    pos = {t: i for i, t in enumerate(tuples)}
    up = []
    for t in tuples:
        above = product(*(list(bits(F.up[x])) for F, x in zip(factors, t)))
        up.append(sum(1 << pos[u] for u in above))
    names = ["(" + ",".join(F.label(x) for F, x in zip(factors, t)) + ")" for t in tuples]
    return lattice_from_upsets(up, names)[0]


def _from_figure(names, edges) -> Lattice:
    """Lattice from named cover edges; ``names`` must already be a linear extension."""
    idx = {s: i for i, s in enumerate(names)}
    return validate_lattice(len(names), [(idx[a], idx[b]) for a, b in edges], names)


# Six-element L2 x L3 as drawn in the gluing figures: atoms u, v; w = u v v;
# z is the second upper cover of v.
_BASE = [("0", "u"), ("0", "v"), ("u", "w"), ("v", "w"), ("v", "z"), ("w", "1"), ("z", "1")]


def _subdivide(lower, upper, new, relabel):
    """Insert ``new`` on the base edge lower-upper, then apply ``relabel``."""
    edges = [e for e in _BASE if e != (lower, upper)] + [(lower, new), (new, upper)]
    return [(relabel.get(a, a), relabel.get(b, b)) for a, b in edges]


FIGURES = {
    "N5": (["0", "a", "b", "c", "1"],
           [("0", "a"), ("0", "b"), ("b", "c"), ("a", "1"), ("c", "1")]),
    "B2": (["0", "p", "q", "1"], [("0", "p"), ("0", "q"), ("p", "1"), ("q", "1")]),
    "M3": (["0", "p", "q", "r", "1"],
           [("0", "p"), ("0", "q"), ("0", "r"), ("p", "1"), ("q", "1"), ("r", "1")]),
    "L2xL3": (["0", "u", "v", "w", "z", "1"], _BASE),
    # a -< b marks the prime interval collapsed in the corresponding quotient.
    "G": (["0", "a", "v", "b", "w", "z", "1"], _subdivide("0", "u", "a", {"u": "b"})),
    "H": (["0", "u", "a", "b", "w", "z", "1"], _subdivide("0", "v", "a", {"v": "b"})),
    "K": (["0", "a", "v", "b", "w", "z", "1"], _subdivide("u", "w", "b", {"u": "a"})),
    "Gp": (["0", "u", "v", "w", "a", "b", "1"], _subdivide("z", "1", "b", {"z": "a"})),
    "Hp": (["0", "u", "v", "z", "a", "b", "1"], _subdivide("w", "1", "b", {"w": "a"})),
    "Kp": (["0", "u", "v", "a", "w", "b", "1"], _subdivide("v", "z", "a", {"z": "b"})),
}

NAMES = tuple(FIGURES)


def named(name: str) -> Lattice:
    try:
        names, edges = FIGURES[name]
    except KeyError:
        raise UnknownName(f"unknown lattice name {name!r}; known: {', '.join(NAMES)}") from None
    return _from_figure(names, edges)


def power(L: Lattice, k: int) -> Lattice:
    """``L`` to the ``k``-th direct power; ``k = 0`` gives the one-element lattice."""
    if k == 0:
        return chain(1)
    return direct_product([L] * k)


__all__ = [
    "chain", "ordinal_sum", "ordinal_sum_all", "horizontal_sum", "direct_product",
    "named", "power", "NAMES", "FIGURES", "dual",
]
