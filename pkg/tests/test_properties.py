import random

from hypothesis import given, settings, strategies as st

from oracles import compatible

from conlat import (
    canonical_code, congruence_join, congruence_meet, dual, horizontal_sum, isomorphic,
    ordinal_sum, direct_product,
)
from conlat.congruence import all_congruences, count_congruences, principal_congruence, quotient
from conlat.dsl import build, random_expr
from conlat.enumeration import enumerate_lattices
from conlat.lattice import validate_lattice

SMALL = [L for n in range(1, 7) for L in enumerate_lattices(n)]

small = st.sampled_from(SMALL)
seeds = st.integers(min_value=0, max_value=2**32)


def from_seed(seed, max_size=10):
    return build(random_expr(random.Random(seed), max_size=max_size))


lattices = st.one_of(small, seeds.map(from_seed))
with_summand = st.sampled_from([L for L in SMALL if L.n > 2])


@settings(max_examples=120, deadline=None)
@given(lattices)
def test_meet_and_join_are_bounds(L):
    for x in range(L.n):
        for y in range(L.n):
            m, j = L.meet(x, y), L.join(x, y)
            assert L.leq(m, x) and L.leq(m, y) and L.leq(x, j) and L.leq(y, j)
            assert L.join(x, m) == x and L.meet(x, j) == x
            lower = [z for z in range(L.n) if L.leq(z, x) and L.leq(z, y)]
            assert all(L.leq(z, m) for z in lower)


@settings(max_examples=120, deadline=None)
@given(lattices)
def test_covers_are_the_transitive_reduction(L):
    for a in range(L.n):
        for b in range(L.n):
            between = [z for z in range(L.n) if z not in (a, b) and L.leq(a, z) and L.leq(z, b)]
            assert L.is_cover(a, b) == (a != b and L.leq(a, b) and not between)
    assert validate_lattice(L.n, L.covers) == L


@settings(max_examples=80, deadline=None)
@given(lattices)
def test_double_dual(L):
    assert isomorphic(dual(dual(L)), L)
    assert count_congruences(dual(L)) == count_congruences(L)


@settings(max_examples=80, deadline=None)
@given(lattices)
def test_narrows_collapse_exactly_one_pair(L):
    for a, b in L.covers:
        narrows = L.is_meet_irreducible(a) and L.is_join_irreducible(b)
        assert L.is_narrows(a, b) == narrows
        theta = principal_congruence(L, a, b)
        assert (theta.num_blocks == L.n - 1) == narrows


@settings(max_examples=60, deadline=None)
@given(with_summand, with_summand)
def test_horizontal_sum_commutes(A, B):
    H = horizontal_sum([A, B])
    assert H.n == A.n + B.n - 2
    assert isomorphic(H, horizontal_sum([B, A]))


@settings(max_examples=60, deadline=None)
@given(small, small)
def test_sum_and_product_counts(A, B):
    # the top of A is identified with the bottom of B
    assert count_congruences(ordinal_sum(A, B)) == count_congruences(A) * count_congruences(B)
    if A.n * B.n <= 24:
        P = direct_product([A, B])
        assert count_congruences(P) == count_congruences(A) * count_congruences(B)


@settings(max_examples=60, deadline=None)
@given(lattices)
def test_congruences_are_compatible_and_closed(L):
    congs = all_congruences(L)
    keys = {t.block_of for t in congs}
    assert len(keys) == len(congs)
    for t in congs[:12]:
        assert compatible(L, t.block_of)
        Q, image = quotient(L, t)
        assert Q.n == t.num_blocks
        for s in congs[:12]:
            assert congruence_join(L, s, t).block_of in keys
            assert congruence_meet(L, s, t).block_of in keys


@settings(max_examples=80, deadline=None)
@given(lattices, seeds)
def test_code_invariant_under_relabelling(L, seed):
    rng = random.Random(seed)
    order, remaining = [], set(range(L.n))
    while remaining:
        ready = sorted(x for x in remaining if all(y not in remaining for y in L.lower_covers(x)))
        x = rng.choice(ready)
        order.append(x)
        remaining.remove(x)
    pos = {x: i for i, x in enumerate(order)}
    M = validate_lattice(L.n, [(pos[a], pos[b]) for a, b in L.covers])
    assert canonical_code(M) == canonical_code(L)
