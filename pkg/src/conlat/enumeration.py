"""Exhaustive generation of all n-element lattices up to isomorphism.

Removing a coatom from a finite lattice with at least three elements leaves a
lattice (the rest is meet-closed and keeps the top), so every lattice of size
m + 1 arises from one of size m by adding a new coatom x.  If D is the set of
elements strictly below x, the extension is a lattice exactly when

* D is a down-set containing 0 and not the top,
* for every y other than the top, D intersected with the down-set of y has a
  greatest element (the meet of x and y), and
* joins of two elements of D stay in D or equal the top (otherwise x and that
  join would be incomparable minimal upper bounds).

Children are deduplicated by canonical code.
"""
from __future__ import annotations

import json
import os
from functools import lru_cache

from .canonical import canonical_code, lattice_from_code
from .construct import chain
from .errors import SizeBound
from .lattice import Lattice, bits, to_json, validate_lattice

DEFAULT_MAX_N = 10


def max_n() -> int:
    """Enumeration bound; the CONLAT_MAX_N environment variable may lower it."""
    env = os.environ.get("CONLAT_MAX_N")
    if env:
        return min(DEFAULT_MAX_N, int(env))
    return DEFAULT_MAX_N


def _check_bound(n):
    if n < 1:
        raise SizeBound(f"n must be at least 1, got {n}")
    if n > max_n():
        raise SizeBound(f"enumeration supports n <= {max_n()}, got {n}")


def _proper_downsets(M: Lattice):
    """Down-sets of ``M`` that contain 0 but not the top, as bitmasks."""
    top = M.top

    def rec(x, chosen):
        if x == top:
            yield chosen
            return
        yield from rec(x + 1, chosen)
        strict = M.down[x] & ~(1 << x)
        if strict & chosen == strict:
            yield from rec(x + 1, chosen | (1 << x))

    yield from rec(1, 1)


def _admissible(M: Lattice, D: int) -> bool:
    for y in range(M.top):
        common = D & M.down[y]
        z = common.bit_length() - 1
        if M.down[z] != common:
            return False
    members = list(bits(D))
    join = M.join_table
    for i, y in enumerate(members):
        row = join[y]
        for z in members[i + 1:]:
            j = row[z]
            if j != M.top and not D >> j & 1:
                return False
    return True


def extensions(M: Lattice):
    """Every lattice obtained from ``M`` by adding one new coatom."""
    m = M.n
    top = m
    for D in _proper_downsets(M):
        if not _admissible(M, D):
            continue
        # old top moves to index m, the new coatom takes index m - 1
        pairs = [(a, b if b != M.top else top) for a, b in M.covers]
        pairs.extend((d, m - 1) for d in bits(D))
        pairs.append((m - 1, top))
        yield validate_lattice(m + 1, pairs)


@lru_cache(maxsize=None)
def _codes(n: int) -> tuple[bytes, ...]:
    if n <= 2:
        return (canonical_code(chain(n)),)
    found = set()
    for code in _codes(n - 1):
        for child in extensions(lattice_from_code(code)):
            found.add(canonical_code(child))
    return tuple(sorted(found))


def lattice_codes(n: int) -> tuple[bytes, ...]:
    """Canonical codes of all n-element lattices, sorted."""
    _check_bound(n)
    return _codes(n)


def enumerate_lattices(n: int):
    """Yield one canonical representative per isomorphism class, in code order."""
    for code in lattice_codes(n):
        yield lattice_from_code(code)


def count_lattices(n: int) -> int:
    return len(lattice_codes(n))


def partition_codes(n: int, parts: int) -> list[tuple[bytes, ...]]:
    """Split the sorted code list into ``parts`` contiguous, deterministic chunks."""
    codes = lattice_codes(n)
    parts = max(1, parts)
    size, extra = divmod(len(codes), parts)
    out, start = [], 0
    for i in range(parts):
        end = start + size + (i < extra)
        out.append(codes[start:end])
        start = end
    return out


def write_jsonl(n: int, fh) -> int:
    count = 0
    for code in lattice_codes(n):
        L = lattice_from_code(code)
        record = {"format": 1, **to_json(L), "code": code.hex()}
        fh.write(json.dumps(record, sort_keys=True) + "\n")
        count += 1
    return count
