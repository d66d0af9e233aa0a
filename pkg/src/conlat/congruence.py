"""Congruences of finite lattices.

A congruence is stored as a normalized block map: ``block_of[x]`` is the id of
the block containing ``x`` and ids are numbered by increasing least element.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import LatticeError, NotCompatible, TrivialLattice
from .lattice import Lattice, lattice_from_order

# Number of merges the defensive fixpoint in congruence_join has performed.
# Joins of congruences are congruences, so this must stay at zero.
join_fixpoint_merges = 0


class UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x, y) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if rx < ry:
            self.parent[ry] = rx
        else:
            self.parent[rx] = ry
        return True

    def block_map(self):
        ids = {}
        return tuple(ids.setdefault(self.find(x), len(ids)) for x in range(len(self.parent)))


@dataclass(frozen=True)
class Congruence:
    block_of: tuple[int, ...]

    @property
    def lattice_size(self) -> int:
        return len(self.block_of)

    @property
    def num_blocks(self) -> int:
        return max(self.block_of) + 1

    def blocks(self) -> list[list[int]]:
        out = [[] for _ in range(self.num_blocks)]
        for x, b in enumerate(self.block_of):
            out[b].append(x)
        return out

    def related(self, x: int, y: int) -> bool:
        return self.block_of[x] == self.block_of[y]

    def refines(self, other: "Congruence") -> bool:
        """True iff every block of ``self`` lies inside a block of ``other``."""
        image = {}
        for mine, theirs in zip(self.block_of, other.block_of):
            if image.setdefault(mine, theirs) != theirs:
                return False
        return True

    def is_identity(self) -> bool:
        return self.num_blocks == self.lattice_size

    def is_total(self) -> bool:
        return self.num_blocks == 1

    def __str__(self):
        return format_blocks(self)


def format_blocks(theta: Congruence) -> str:
    return "[" + ",".join("[" + ",".join(map(str, b)) + "]" for b in theta.blocks()) + "]"


def identity(L: Lattice) -> Congruence:
    return Congruence(tuple(range(L.n)))


def total(L: Lattice) -> Congruence:
    return Congruence((0,) * L.n)


def _normalize(block_of):
    ids = {}
    return tuple(ids.setdefault(b, len(ids)) for b in block_of)


def find_violation(L: Lattice, block_of):
    """First ``((x, y, c), op)`` with x, y in one block but x op c, y op c not, else None."""
    n = L.n
    for x in range(n):
        for y in range(x + 1, n):
            if block_of[x] != block_of[y]:
                continue
            for c in range(n):
                if block_of[L.meet_table[x][c]] != block_of[L.meet_table[y][c]]:
                    return (x, y, c), "∧"
                if block_of[L.join_table[x][c]] != block_of[L.join_table[y][c]]:
                    return (x, y, c), "∨"
    return None


def make_congruence(L: Lattice, partition) -> Congruence:
    """The equivalence with the given blocks, checked for compatibility."""
    block_of = [None] * L.n
    for i, block in enumerate(partition):
        for x in block:
            if not 0 <= x < L.n:
                raise LatticeError(f"element {x} out of range")
            if block_of[x] is not None:
                raise LatticeError(f"element {x} appears in two blocks")
            block_of[x] = i
    missing = [x for x, b in enumerate(block_of) if b is None]
    if missing:
        raise LatticeError(f"elements {missing} are in no block")
    bad = find_violation(L, block_of)
    if bad:
        raise NotCompatible(*bad)
    return Congruence(_normalize(block_of))


def _close(L: Lattice, uf: UnionFind, pending) -> int:
    """Merge until the relation generated by ``pending`` is compatible; count merges."""
    meet, join = L.meet_table, L.join_table
    merges = 0
    while pending:
        x, y = pending.pop()
        mx, my, jx, jy = meet[x], meet[y], join[x], join[y]
        for c in range(L.n):
            if uf.union(mx[c], my[c]):
                pending.append((mx[c], my[c]))
                merges += 1
            if uf.union(jx[c], jy[c]):
                pending.append((jx[c], jy[c]))
                merges += 1
    return merges


def principal_congruence(L: Lattice, a: int, b: int) -> Congruence:
    """The least congruence collapsing ``a`` and ``b``."""
    uf = UnionFind(L.n)
    if uf.union(a, b):
        _close(L, uf, [(a, b)])
    return Congruence(uf.block_map())


def congruence_meet(L: Lattice, t1: Congruence, t2: Congruence) -> Congruence:
    return Congruence(_normalize(zip(t1.block_of, t2.block_of)))


def _merge(t1: Congruence, t2: Congruence) -> UnionFind:
    """Union-find holding the transitive closure of the two equivalences."""
    uf = UnionFind(len(t1.block_of))
    for theta in (t1, t2):
        first = {}
        for x, b in enumerate(theta.block_of):
            uf.union(first.setdefault(b, x), x)
    return uf


def congruence_join(L: Lattice, t1: Congruence, t2: Congruence) -> Congruence:
    global join_fixpoint_merges
    uf = _merge(t1, t2)
    # defensive: the union of two congruences' generating pairs must already be closed
    pending = []
    for x in range(L.n):
        r = uf.find(x)
        if r != x:
            pending.append((r, x))
    join_fixpoint_merges += _close(L, uf, pending)
    return Congruence(uf.block_map())


def _sort_key(theta):
    return (-theta.num_blocks, theta.block_of)


def cover_congruences(L: Lattice) -> dict[tuple[int, int], Congruence]:
    return {(a, b): principal_congruence(L, a, b) for a, b in L.covers}


def all_congruences(L: Lattice) -> list[Congruence]:
    """Every congruence of ``L``, finest first.

    Every congruence is the join of the principal congruences of the covers it
    collapses, so closing the cover-principal congruences under joins reaches
    all of them.  The search merges partitions directly; the checked
    :func:`congruence_join` is exercised separately by the tests.
    """
    generators = sorted(set(cover_congruences(L).values()), key=_sort_key)
    seen = {identity(L)}
    frontier = [identity(L)]
    while frontier:
        nxt = []
        for theta in frontier:
            for gen in generators:
                if gen.refines(theta):
                    continue
                psi = Congruence(_merge(theta, gen).block_map())
                if psi not in seen:
                    seen.add(psi)
                    nxt.append(psi)
        frontier = nxt
    return sorted(seen, key=_sort_key)


def count_congruences(L: Lattice) -> int:
    return len(all_congruences(L))


def congruence_lattice(L: Lattice, congruences=None) -> Lattice:
    """Con(L) ordered by refinement, as a lattice."""
    congs = congruences if congruences is not None else all_congruences(L)
    congs = sorted(congs, key=_sort_key)
    names = [format_blocks(t) for t in congs]
    return lattice_from_order(len(congs), lambda i, j: congs[i].refines(congs[j]), names)[0]


def congruence_atoms(L: Lattice, congruences=None) -> list[Congruence]:
    """Minimal non-identity congruences."""
    if L.n == 1:
        raise TrivialLattice("the one-element lattice has no congruence atoms")
    congs = congruences if congruences is not None else all_congruences(L)
    nontrivial = [t for t in congs if not t.is_identity()]
    return [t for t in nontrivial
            if not any(s != t and s.refines(t) for s in nontrivial)]


def quotient(L: Lattice, theta: Congruence) -> tuple[Lattice, list[int]]:
    """``L/theta`` and the map sending each element to its block in the quotient."""
    blocks = theta.blocks()
    reps = [b[0] for b in blocks]
    bo = theta.block_of

    def leq(i, j):
        return bo[L.join(reps[i], reps[j])] == j

    names = ["{" + ",".join(L.label(x) for x in b) + "}" for b in blocks]
    Q, index = lattice_from_order(len(blocks), leq, names)
    return Q, [index[b] for b in bo]


def restrict(L: Lattice, theta: Congruence, members) -> Congruence:
    """``theta`` restricted to the listed elements, re-indexed in the given order."""
    return Congruence(_normalize(theta.block_of[x] for x in members))


def from_blocks(blocks) -> Congruence:
    """A :class:`Congruence` from a block list, without a compatibility check."""
    n = sum(len(b) for b in blocks)
    block_of = [0] * n
    for i, b in enumerate(blocks):
        for x in b:
            block_of[x] = i
    return Congruence(_normalize(block_of))
