"""Validated finite lattices.

Elements are the integers ``0..n-1`` listed in a linear extension of the
order, so ``x <= y`` implies ``x <= y`` as integers; ``0`` is the bottom and
``n - 1`` the top.  Down-sets and up-sets are kept as int bitmasks.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property

from .errors import BadIndexing, EmptyInterval, LatticeError, NotALattice, NotAPoset


def bits(mask: int):
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Lattice:
    n: int
    covers: tuple[tuple[int, int], ...]
    meet_table: tuple[tuple[int, ...], ...] = field(compare=False, repr=False)
    join_table: tuple[tuple[int, ...], ...] = field(compare=False, repr=False)
    down: tuple[int, ...] = field(compare=False, repr=False)
    up: tuple[int, ...] = field(compare=False, repr=False)
    names: tuple[str, ...] | None = field(default=None, compare=False, repr=False)

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return self.n - 1

    def __len__(self):
        return self.n

    def leq(self, x: int, y: int) -> bool:
        return bool(self.up[x] >> y & 1)

    def meet(self, x: int, y: int) -> int:
        return self.meet_table[x][y]

    def join(self, x: int, y: int) -> int:
        return self.join_table[x][y]

    def order_matrix(self) -> list[list[bool]]:
        return [[self.leq(i, j) for j in range(self.n)] for i in range(self.n)]

    @cached_property
    def upper_cover_sets(self) -> tuple[tuple[int, ...], ...]:
        ups = [[] for _ in range(self.n)]
        for a, b in self.covers:
            ups[a].append(b)
        return tuple(tuple(u) for u in ups)

    @cached_property
    def lower_cover_sets(self) -> tuple[tuple[int, ...], ...]:
        downs = [[] for _ in range(self.n)]
        for a, b in self.covers:
            downs[b].append(a)
        return tuple(tuple(d) for d in downs)

    def upper_covers(self, x: int) -> tuple[int, ...]:
        return self.upper_cover_sets[x]

    def lower_covers(self, x: int) -> tuple[int, ...]:
        return self.lower_cover_sets[x]

    def is_cover(self, a: int, b: int) -> bool:
        return b in self.upper_cover_sets[a]

    def is_meet_irreducible(self, x: int) -> bool:
        return len(self.upper_cover_sets[x]) == 1

    def is_join_irreducible(self, x: int) -> bool:
        return len(self.lower_cover_sets[x]) == 1

    def is_narrows(self, a: int, b: int) -> bool:
        """True iff ``a -< b`` is the only cover leaving ``a`` and entering ``b``."""
        return (self.upper_cover_sets[a] == (b,)
                and self.lower_cover_sets[b] == (a,))

    @cached_property
    def heights(self) -> tuple[int, ...]:
        """Length of the longest chain from the bottom to each element."""
        h = [0] * self.n
        for b in range(self.n):
            for a in self.lower_cover_sets[b]:
                h[b] = max(h[b], h[a] + 1)
        return tuple(h)

    def label(self, x: int) -> str:
        return self.names[x] if self.names else str(x)

    def __str__(self):
        return f"Lattice(n={self.n}, covers={list(self.covers)})"


def _closure(n, succ):
    """Strict reachability masks for the relation given by successor masks."""
    reach = list(succ)
    for k in range(n):
        kb = 1 << k
        rk = reach[k]
        for i in range(n):
            if reach[i] & kb:
                reach[i] |= rk
    return reach


def _reduction(n, up):
    covers = []
    for a in range(n):
        strict = up[a] & ~(1 << a)
        above = 0
        for c in bits(strict):
            above |= up[c] & ~(1 << c)
        for b in bits(strict & ~above):
            covers.append((a, b))
    return tuple(covers)


def _bound_table(n, rel, pick, kind):
    """Join (or meet) table from up-sets (or down-sets).

    A pair with several minimal common bounds is reported before a pair with
    no common bound at all, since the former is the more telling defect.
    """
    table = [[0] * n for _ in range(n)]
    missing = None
    for x in range(n):
        for y in range(x, n):
            common = rel[x] & rel[y]
            if not common:
                missing = missing or (x, y)
                continue
            z = pick(common)
            if rel[z] != common:
                raise NotALattice((x, y), f"least {kind}" if kind == "upper bound"
                                  else f"greatest {kind}")
            table[x][y] = table[y][x] = z
    if missing:
        raise NotALattice(missing, kind)
    return table


def validate_lattice(n: int, covers, names=None) -> Lattice:
    """Build a :class:`Lattice` from ``n`` and a generating list of cover pairs.

    The order is the reflexive-transitive closure of ``covers``; redundant pairs
    are allowed and dropped.  Raises :class:`NotAPoset` on a cycle,
    :class:`BadIndexing` when the indices are not a linear extension, and
    :class:`NotALattice` for the first pair (joins checked before meets)
    lacking a least upper or greatest lower bound; pairs with two minimal
    bounds are reported ahead of pairs with none.
    """
    if n < 1:
        raise LatticeError("a lattice needs at least one element")
    succ = [0] * n
    for a, b in covers:
        if not (0 <= a < n and 0 <= b < n):
            raise LatticeError(f"cover pair {(a, b)} out of range for n={n}")
        succ[a] |= 1 << b
    reach = _closure(n, succ)
    for i in range(n):
        if reach[i] >> i & 1:
            raise NotAPoset(f"element {i} lies on a cycle")
    up = [reach[i] | (1 << i) for i in range(n)]
    for i in range(n):
        if up[i] & ((1 << i) - 1):
            raise BadIndexing(
                f"element {i} lies below a smaller index; indices must form a linear extension")
    down = [0] * n
    for i in range(n):
        for j in bits(up[i]):
            down[j] |= 1 << i

    join_table = _bound_table(n, up, lambda m: (m & -m).bit_length() - 1, "upper bound")
    meet_table = _bound_table(n, down, lambda m: m.bit_length() - 1, "lower bound")

    if names is not None:
        names = tuple(str(s) for s in names)
        if len(names) != n:
            raise LatticeError("names must have one entry per element")
    return Lattice(
        n=n,
        covers=_reduction(n, up),
        meet_table=tuple(map(tuple, meet_table)),
        join_table=tuple(map(tuple, join_table)),
        down=tuple(down),
        up=tuple(up),
        names=names,
    )


def lattice_from_order(n: int, leq, names=None) -> tuple[Lattice, list[int]]:
    """Build a lattice from an arbitrary labelling of an order relation.

    ``leq(i, j)`` is queried for the original labels ``0..n-1``.  Returns the
    re-indexed lattice together with ``index``, where ``index[i]`` is the new
    position of original element ``i``.
    """
    up = [0] * n
    for i in range(n):
        for j in range(n):
            if i == j or leq(i, j):
                up[i] |= 1 << j
    return lattice_from_upsets(up, names)


def lattice_from_upsets(up, names=None) -> tuple[Lattice, list[int]]:
    n = len(up)
    down_size = [0] * n
    for i in range(n):
        for j in bits(up[i]):
            down_size[j] += 1
    order = sorted(range(n), key=lambda i: (down_size[i], i))
    index = [0] * n
    for new, old in enumerate(order):
        index[old] = new
    pairs = []
    for old in range(n):
        for other in bits(up[old] & ~(1 << old)):
            pairs.append((index[old], index[other]))
    new_names = None
    if names is not None:
        new_names = [names[old] for old in order]
    return validate_lattice(n, pairs, new_names), index


def dual(L: Lattice) -> Lattice:
    """The order dual; element ``i`` becomes ``n - 1 - i``."""
    n = L.n
    pairs = [(n - 1 - b, n - 1 - a) for a, b in L.covers]
    names = L.names[::-1] if L.names else None
    return validate_lattice(n, pairs, names)


def interval_with_map(L: Lattice, a: int, b: int) -> tuple[Lattice, list[int]]:
    """The interval ``[a, b]`` re-indexed, and the embedding new index -> old."""
    if not L.leq(a, b):
        raise EmptyInterval(f"{a} is not below {b}")
    members = list(bits(L.up[a] & L.down[b]))
    pos = {x: i for i, x in enumerate(members)}
    pairs = [(pos[x], pos[y]) for x, y in L.covers if x in pos and y in pos]
    names = [L.label(x) for x in members]
    return validate_lattice(len(members), pairs, names), members


def interval(L: Lattice, a: int, b: int) -> Lattice:
    return interval_with_map(L, a, b)[0]


def atoms_of(L: Lattice) -> frozenset[int]:
    if L.n == 1:
        return frozenset()
    return frozenset(L.upper_covers(0))


def _closed_sets(L: Lattice, upward: bool):
    """Yield every up-set (or down-set) of ``L``, including the empty one."""
    rel = L.up if upward else L.down
    order = range(L.n - 1, -1, -1) if upward else range(L.n)

    def rec(k, chosen):
        if k == L.n:
            yield chosen
            return
        x = order[k]
        yield from rec(k + 1, chosen)
        strict = rel[x] & ~(1 << x)
        if strict & chosen == strict:
            yield from rec(k + 1, chosen | (1 << x))

    yield from rec(0, 0)


def _sorted_sets(masks):
    return [frozenset(bits(m)) for m in sorted(masks, key=lambda m: (bin(m).count("1"), m))]


def _enumerate_filters(L, upward):
    table = L.meet_table if upward else L.join_table
    found = []
    for s in _closed_sets(L, upward):
        if not s:
            continue
        members = list(bits(s))
        if all(s >> table[x][y] & 1 for i, x in enumerate(members) for y in members[i + 1:]):
            found.append(s)
    return _sorted_sets(found)


def filters(L: Lattice) -> list[frozenset[int]]:
    """All filters (non-empty, up-closed, meet-closed subsets), by enumeration."""
    return _enumerate_filters(L, upward=True)


def ideals(L: Lattice) -> list[frozenset[int]]:
    """All ideals (non-empty, down-closed, join-closed subsets), by enumeration."""
    return _enumerate_filters(L, upward=False)


def to_json(L: Lattice) -> dict:
    out = {"n": L.n, "covers": [list(c) for c in L.covers]}
    if L.names:
        out["names"] = list(L.names)
    return out


def from_json(obj) -> Lattice:
    if isinstance(obj, (str, bytes)):
        obj = json.loads(obj)
    try:
        n = int(obj["n"])
        covers = [(int(a), int(b)) for a, b in obj["covers"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise LatticeError(f"malformed lattice JSON: {exc}") from None
    return validate_lattice(n, covers, obj.get("names"))


def to_dot(L: Lattice, name: str = "L") -> str:
    """Graphviz source for the Hasse diagram, one rank per height."""
    lines = [f'digraph "{name}" {{', "  rankdir=BT;", "  node [shape=circle];"]
    for x in range(L.n):
        lines.append(f'  {x} [label="{L.label(x)}"];')
    levels = {}
    for x, h in enumerate(L.heights):
        levels.setdefault(h, []).append(x)
    for h in sorted(levels):
        lines.append("  { rank=same; " + " ".join(map(str, levels[h])) + "; }")
    for a, b in L.covers:
        lines.append(f"  {a} -> {b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
