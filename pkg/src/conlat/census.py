"""Congruence-count censuses over all n-element lattices, and CFI witnesses.

``NCL(n)`` is the set of congruence counts attained by n-element lattices,
``gncl(p, n)`` its p-th largest value and ``lnc(p, n)`` the lattices
attaining it.  A triple ``(k, n, n)`` is CFI-representable when some
n-element lattice has exactly k congruences (finite lattices always have
exactly n filters and n ideals).
"""
from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

from .canonical import canonical_code, lattice_from_code
from .congruence import count_congruences
from .dsl import evaluate
from .enumeration import lattice_codes, partition_codes
from .errors import LatticeError
from .lattice import Lattice, filters, ideals

WITNESS_CAP = 64


@dataclass(frozen=True)
class CfiTriple:
    k: int
    n: int

    def __post_init__(self):
        if self.k < 1 or self.n < 1:
            raise LatticeError("CFI triples need positive entries")
        if self.k == 1 and self.n != 1:
            raise LatticeError("only the one-element lattice has a single congruence")


@dataclass
class CensusRecord:
    n: int
    histogram: dict[int, int]
    witnesses: dict[int, list[bytes]] = field(repr=False)

    @property
    def ncl(self) -> list[int]:
        return sorted(self.histogram)

    @property
    def total(self) -> int:
        return sum(self.histogram.values())

    def gncl(self, p: int):
        values = sorted(self.histogram, reverse=True)
        return values[p - 1] if 1 <= p <= len(values) else None

    def to_json(self, ranks: int = 5) -> dict:
        gncl = {str(p): self.gncl(p) for p in range(1, ranks + 1) if self.gncl(p) is not None}
        return {
            "format": 1,
            "n": self.n,
            "histogram": {str(k): self.histogram[k] for k in sorted(self.histogram)},
            "ncl": self.ncl,
            "gncl": gncl,
            "witnesses": {str(k): [c.hex() for c in self.witnesses[k]]
                          for k in sorted(self.witnesses)},
        }

    def to_csv(self) -> str:
        lines = ["n,con_count,multiplicity"]
        lines += [f"{self.n},{k},{self.histogram[k]}" for k in sorted(self.histogram)]
        return "\n".join(lines) + "\n"


def _count_chunk(codes):
    return [(code, count_congruences(lattice_from_code(code))) for code in codes]


def default_threads() -> int:
    return os.cpu_count() or 1


@lru_cache(maxsize=None)
def congruence_counts(n: int, threads: int = 1) -> tuple[tuple[bytes, int], ...]:
    """``(code, |Con|)`` for every n-element lattice, in code order."""
    if threads <= 1 or n < 7:
        return tuple(_count_chunk(lattice_codes(n)))
    chunks = partition_codes(n, threads * 4)
    with ProcessPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(_count_chunk, chunks))
    # chunks are contiguous slices of the sorted codes, so concatenation keeps order
    return tuple(pair for part in parts for pair in part)


def census(n: int, threads: int = 1, cap: int = WITNESS_CAP) -> CensusRecord:
    counts = congruence_counts(n, threads)
    histogram = Counter(k for _, k in counts)
    witnesses: dict[int, list[bytes]] = {}
    for code, k in counts:
        bucket = witnesses.setdefault(k, [])
        if len(bucket) < cap:
            bucket.append(code)
    return CensusRecord(n=n, histogram=dict(sorted(histogram.items())), witnesses=witnesses)


def merge_histograms(parts) -> dict[int, int]:
    """Pointwise sum; order-insensitive, so partial censuses can be combined freely."""
    total = Counter()
    for h in parts:
        total.update(h)
    return dict(sorted(total.items()))


def gncl(p: int, n: int, threads: int = 1):
    if p < 1:
        raise LatticeError("rank p must be at least 1")
    return census(n, threads).gncl(p)


def lnc_codes(p: int, n: int, threads: int = 1) -> list[bytes]:
    value = gncl(p, n, threads)
    if value is None:
        return []
    return [code for code, k in congruence_counts(n, threads) if k == value]


def lnc(p: int, n: int, threads: int = 1) -> list[Lattice]:
    return [lattice_from_code(c) for c in lnc_codes(p, n, threads)]


# Structural families of extremal lattices, as expressions.

def chain_family(n):
    return [f"C({n})"]


def rhombus_family(n):
    return [f"C({r}) + B2 + C({n - r - 2})" for r in range(1, n - 2)]


def pentagon_family(n):
    return [f"C({k}) + N5 + C({n - k - 3})" for k in range(1, n - 3)]


def fourth_families(n):
    exprs = [f"C({k}) + C(2)*C(3) + C({n - k - 4})" for k in range(1, n - 4)]
    exprs += [f"C({k}) + B2 + C({m}) + B2 + C({n - k - m - 4})"
              for k in range(1, n - 4) for m in range(1, n - 4 - k + 1) if k + m <= n - 5]
    return exprs


def fifth_conjectured(n):
    return ([f"C({k}) + (C(3)#C(5)) + C({n - k - 4})" for k in range(1, n - 4)]
            + [f"C({k}) + (C(4)#C(4)) + C({n - k - 4})" for k in range(1, n - 4)])


FAMILIES = {1: chain_family, 2: rhombus_family, 3: pentagon_family, 4: fourth_families,
            5: fifth_conjectured}


def family_codes(p: int, n: int) -> set[bytes]:
    return {canonical_code(evaluate(e)) for e in FAMILIES[p](n)}


# Explicit constructions (k, n, expression) for CFI-representable triples.
RECIPES = [
    (2, 7, "C(3)#C(3)#C(3)#C(3)#C(3)"),
    (4, 7, "(C(3)#C(3)#C(3)#C(3)) + C(2)"),
    (8, 7, "M3 + C(3)"),
    (16, 7, "B2 + B2"),
    (32, 7, "B2 + C(4)"),
    (64, 7, "C(7)"),
    (7, 7, "C(3) # (C(2) + B2 + C(2))"),
    (7, 9, "C(3) # (C(2) + M3 + C(3))"),
    (8, 9, "(C(3)#C(3)#C(3)#C(3)) + B2"),
    (9, 9, "(C(2) + B2 + C(2) + C(2)) # C(3) # C(3)"),
    (10, 9, "C(3) # (C(2) + (C(4)#C(4)) + C(2))"),
    (7, 11, "(C(2) + (C(4)#C(3)#C(3)) + C(2) + C(2)) # C(3) # C(3)"),
    (8, 11, "(C(2) + (C(3) # (C(2) + B2 + C(2))) + C(2)) # C(3) # C(3)"),
    (9, 11, "(C(2) + M3 + C(3) + C(2)) # C(3) # C(3)"),
    (10, 11, "(C(3)#C(3)#C(3)#C(3)#C(3)) + N5"),
    (11, 11, "C(3) # (C(2) + (C(3) # (C(2) + N5 + C(2))) + C(2))"),
    (12, 11, "(C(4)#C(3)#C(3)) + M3 + C(2)"),
]


def _hsum_of_threes(count):
    return "#".join(["C(3)"] * count)


def small_recipe(k: int, n: int):
    """Generic constructions for 2 <= k <= 6 built from horizontal sums of chains."""
    if k == 2 and n >= 5:
        return _hsum_of_threes(n - 2)
    if k == 3 and n >= 6:
        return "C(4)#" + _hsum_of_threes(n - 4)
    if k == 4 and n >= 6:
        return "C(2) + (" + _hsum_of_threes(n - 3) + ")"
    if k == 5 and n >= 7:
        return "C(4)#C(4)#" + _hsum_of_threes(n - 6)
    if k == 6 and n >= 7:
        return "C(2) + (C(4)#" + _hsum_of_threes(n - 5) + ")"
    return None


def power_of_two_recipe(j: int, n: int):
    """A lattice with n elements and 2**j congruences, for n >= 7 and 1 <= j <= n - 1."""
    if n < 7 or not 1 <= j <= n - 1:
        return None
    if j == n - 1:
        return f"C({n})"
    if j == n - 2:
        return f"B2 + C({n - 3})"
    if j == n - 3:
        return f"C(2)*C(3) + C({n - 5})"
    return f"({_hsum_of_threes(n - j - 1)}) + C({j})"


def construction_recipe(k: int, n: int):
    """An expression for an n-element lattice with k congruences, if one is known.

    Uses the explicit table, the generic small-k families, powers of two, and
    the step L3 # (L2 + X + L2), which adds 3 to both k and n.
    """
    for rk, rn, expr in RECIPES:
        if (rk, rn) == (k, n):
            return expr
    expr = small_recipe(k, n)
    if expr:
        return expr
    if k & (k - 1) == 0 and k > 1:
        expr = power_of_two_recipe(k.bit_length() - 1, n)
        if expr:
            return expr
    if n >= 10 and k >= 7:
        inner = construction_recipe(k - 3, n - 3)
        if inner:
            return f"C(3) # (C(2) + ({inner}) + C(2))"
    return None


def repeated_recipe(k: int, n: int, s: int):
    """Ordinal sum of ``s`` copies of a witness for ``(k, n)``: gives ``(k**s, s*n - s + 1)``."""
    inner = construction_recipe(k, n)
    if inner is None or s < 1:
        return None
    return " + ".join([f"({inner})"] * s)


@dataclass
class CfiWitness:
    k: int
    n: int
    lattice: Lattice = field(repr=False)
    expr: str | None = None
    filters: int = 0
    ideals: int = 0

    @property
    def code(self) -> bytes:
        return canonical_code(self.lattice)


def witness_for(expr: str) -> CfiWitness:
    L = evaluate(expr)
    return CfiWitness(k=count_congruences(L), n=L.n, lattice=L, expr=expr,
                      filters=len(filters(L)), ideals=len(ideals(L)))


def cfi_check(k: int, n: int, mode: str = "exhaustive") -> list[CfiWitness]:
    """Lattices with n elements and k congruences.

    ``exhaustive`` searches the full census (bounded n); ``construct`` evaluates
    a known construction and returns it only if it really has ``k``
    congruences and ``n`` filters and ideals.
    """
    if mode == "exhaustive":
        out = []
        for code, count in congruence_counts(n):
            if count == k:
                L = lattice_from_code(code)
                out.append(CfiWitness(k=k, n=n, lattice=L, filters=len(filters(L)),
                                      ideals=len(ideals(L))))
        return out
    if mode == "construct":
        expr = construction_recipe(k, n)
        if expr is None:
            return []
        w = witness_for(expr)
        if (w.k, w.n, w.filters, w.ideals) != (k, n, n, n):
            return []
        return [w]
    raise ValueError(f"unknown mode {mode!r}")
