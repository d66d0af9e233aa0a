"""Canonical codes and isomorphism witnesses for small lattices.

Both routines use individualization-refinement over the directed cover graph:
elements start coloured by an isomorphism-invariant vector, colours are
refined by the colours of upper and lower covers until stable, and ties are
broken by branching on one element of the first non-singleton cell.
Elements with identical upper and lower covers are interchangeable, so only
one of them is ever branched on.
"""
from __future__ import annotations

from .errors import SizeBound
from .lattice import Lattice

MAX_CANONICAL = 16
MAX_ISOMORPHISM = 1024


def element_invariants(L: Lattice) -> list[tuple]:
    """(height, depth, #lower covers, #upper covers, |down-set|, |up-set|) per element."""
    top_height = L.heights[L.top]
    depth = [0] * L.n
    for a in range(L.n - 1, -1, -1):
        for b in L.upper_covers(a):
            depth[a] = max(depth[a], depth[b] + 1)
    return [(L.heights[x], top_height - depth[x], len(L.lower_covers(x)),
             len(L.upper_covers(x)), bin(L.down[x]).count("1"), bin(L.up[x]).count("1"))
            for x in range(L.n)]


def _rank(keys):
    table = {k: i for i, k in enumerate(sorted(set(keys)))}
    return [table[k] for k in keys]


def _refine(colors, ups, downs):
    """Equitable refinement; colour order is preserved and cells only split."""
    count = len(set(colors))
    while True:
        keys = [(colors[x], tuple(sorted(colors[y] for y in ups[x])),
                 tuple(sorted(colors[y] for y in downs[x])))
                for x in range(len(colors))]
        new = _rank(keys)
        new_count = len(set(new))
        if new_count == count:
            return new
        colors, count = new, new_count


def _individualize(colors, x):
    colors = [2 * c + 1 for c in colors]
    colors[x] -= 1
    return colors


def _twin_keys(L: Lattice):
    return [(L.lower_covers(x), L.upper_covers(x)) for x in range(L.n)]


def _target_cell(colors, members):
    cells = {}
    for x in members:
        cells.setdefault(colors[x], []).append(x)
    multi = [c for c, xs in cells.items() if len(xs) > 1]
    if not multi:
        return None
    return cells[min(multi)]


def canonical_labeling(L: Lattice) -> tuple[bytes, list[int]]:
    """Return ``(code, position)`` where ``position[x]`` is x's canonical index."""
    if L.n > MAX_CANONICAL:
        raise SizeBound(f"canonical codes support at most {MAX_CANONICAL} elements, got {L.n}")
    ups = L.upper_cover_sets
    downs = L.lower_cover_sets
    twins = _twin_keys(L)
    members = range(L.n)
    best = [None, None]

    def leaf(colors):
        pos = colors
        # cover bits in canonical row-major order, first pair most significant
        inv = [0] * L.n
        for x, p in enumerate(pos):
            inv[p] = x
        bitstring = 0
        for i in range(L.n):
            ui = set(pos[y] for y in ups[inv[i]])
            for j in range(i + 1, L.n):
                bitstring = (bitstring << 1) | (j in ui)
        if best[0] is None or bitstring < best[0]:
            best[0], best[1] = bitstring, list(pos)

    def search(colors):
        cell = _target_cell(colors, members)
        if cell is None:
            leaf(colors)
            return
        tried = set()
        for x in cell:
            if twins[x] in tried:
                continue
            tried.add(twins[x])
            search(_refine(_individualize(colors, x), ups, downs))

    search(_refine(_rank(element_invariants(L)), ups, downs))
    bitstring, pos = best
    nbits = L.n * (L.n - 1) // 2
    code = bytes([L.n]) + bitstring.to_bytes((nbits + 7) // 8, "big")
    return code, pos


def canonical_code(L: Lattice) -> bytes:
    return canonical_labeling(L)[0]


def canonical_form(L: Lattice) -> Lattice:
    """The relabelled copy of ``L`` whose indices are its canonical positions."""
    from .lattice import validate_lattice

    _, pos = canonical_labeling(L)
    names = None
    if L.names:
        names = [None] * L.n
        for x, p in enumerate(pos):
            names[p] = L.names[x]
    return validate_lattice(L.n, [(pos[a], pos[b]) for a, b in L.covers], names)


def code_hex(code: bytes) -> str:
    return code.hex()


def lattice_from_code(code: bytes) -> Lattice:
    """Rebuild the canonical representative encoded by ``code``."""
    from .lattice import validate_lattice

    n = code[0]
    nbits = n * (n - 1) // 2
    bitstring = int.from_bytes(code[1:], "big") if nbits else 0
    covers = []
    k = nbits
    for i in range(n):
        for j in range(i + 1, n):
            k -= 1
            if bitstring >> k & 1:
                covers.append((i, j))
    return validate_lattice(n, covers)


def is_isomorphic(L: Lattice, M: Lattice) -> list[int] | None:
    """An order isomorphism ``L -> M`` as a list, or None if there is none."""
    if L.n != M.n or len(L.covers) != len(M.covers):
        return None
    n = L.n
    if n > MAX_ISOMORPHISM:
        raise SizeBound(f"isomorphism search supports at most {MAX_ISOMORPHISM} elements")
    # disjoint union: L is 0..n-1, M is n..2n-1
    ups = list(L.upper_cover_sets) + [tuple(y + n for y in M.upper_cover_sets[x]) for x in range(n)]
    downs = list(L.lower_cover_sets) + [tuple(y + n for y in M.lower_cover_sets[x]) for x in range(n)]
    twins = _twin_keys(M)
    left, right = range(n), range(n, 2 * n)

    def balanced(colors):
        counts = {}
        for x in left:
            counts[colors[x]] = counts.get(colors[x], 0) + 1
        for y in right:
            c = colors[y]
            if not counts.get(c):
                return False
            counts[c] -= 1
        return True

    def search(colors):
        if not balanced(colors):
            return None
        cell = _target_cell(colors, left)
        if cell is None:
            where = {colors[y]: y - n for y in right}
            f = [where[colors[x]] for x in left]
            if all(M.is_cover(f[a], f[b]) for a, b in L.covers):
                return f
            return None
        x = cell[0]
        tried = set()
        for y in right:
            if colors[y] != colors[x] or twins[y - n] in tried:
                continue
            tried.add(twins[y - n])
            found = search(_refine(_pair(colors, x, y), ups, downs))
            if found is not None:
                return found
        return None

    start = _rank(element_invariants(L) + element_invariants(M))
    return search(_refine(start, ups, downs))


def _pair(colors, x, y):
    colors = [2 * c + 1 for c in colors]
    colors[x] -= 1
    colors[y] -= 1
    return colors


def isomorphic(L: Lattice, M: Lattice) -> bool:
    return is_isomorphic(L, M) is not None
