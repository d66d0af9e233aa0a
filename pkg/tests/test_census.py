import json

import pytest

from conlat import LatticeError, SizeBound, evaluate, is_isomorphic
from conlat.census import (
    RECIPES, CfiTriple, census, cfi_check, congruence_counts, construction_recipe,
    family_codes, gncl, lnc, lnc_codes, merge_histograms, repeated_recipe, witness_for,
)
from conlat.enumeration import count_lattices, partition_codes
from conlat.census import _count_chunk


def test_tiny_censuses():
    assert census(1).histogram == {1: 1}
    assert census(2).histogram == {2: 1}
    assert census(4).histogram == {4: 1, 8: 1}


def test_five_element_census():
    c = census(5)
    assert c.histogram == {2: 1, 5: 1, 8: 2, 16: 1}
    assert c.ncl == [2, 5, 8, 16]


def test_histogram_totals():
    for n in range(1, 9):
        c = census(n)
        assert c.total == count_lattices(n)
        top = max(c.histogram)
        assert top == 2 ** (n - 1) and c.histogram[top] == 1


def test_six_element_ranks():
    assert (gncl(3, 6), gncl(4, 6), gncl(5, 6)) == (10, 8, 7)


def test_gncl_is_partial():
    assert gncl(2, 3) is None
    assert gncl(1, 1) == 1
    assert lnc(3, 4) == []
    with pytest.raises(LatticeError):
        gncl(0, 5)
    with pytest.raises(SizeBound):
        gncl(1, 11)


def test_rank_three_at_seven():
    got = lnc(3, 7)
    assert len(got) == 3
    for e in ("N5 + C(3)", "C(3) + N5", "C(2) + N5 + C(2)"):
        assert any(is_isomorphic(L, evaluate(e)) for L in got)


def test_witness_cap_keeps_multiplicity():
    c = census(7, cap=2)
    assert all(len(v) <= 2 for v in c.witnesses.values())
    assert c.histogram == census(7).histogram
    assert sum(c.histogram.values()) == 53


def test_partitioned_census_merges_to_the_same_histogram():
    from collections import Counter

    parts = [Counter(k for _, k in _count_chunk(chunk)) for chunk in partition_codes(7, 5)]
    assert merge_histograms(parts) == census(7).histogram
    assert merge_histograms(parts[::-1]) == census(7).histogram


def test_parallel_census_matches_serial():
    assert congruence_counts(8, 2) == congruence_counts(8, 1)


def test_families():
    for n in range(5, 9):
        assert set(lnc_codes(3, n)) == family_codes(3, n)
        assert len(lnc_codes(3, n)) == n - 4
    assert len(family_codes(4, 8)) == len(lnc_codes(4, 8)) == 6


def test_outputs():
    c = census(6)
    data = c.to_json()
    assert data["format"] == 1 and data["n"] == 6
    assert data["gncl"] == {"1": 32, "2": 16, "3": 10, "4": 8, "5": 7}
    assert json.dumps(data) == json.dumps(census(6).to_json())
    lines = c.to_csv().splitlines()
    assert lines[0] == "n,con_count,multiplicity"
    assert "6,32,1" in lines


def test_cfi_triple():
    assert CfiTriple(1, 1).k == 1
    with pytest.raises(LatticeError):
        CfiTriple(1, 5)


def test_cfi_exhaustive():
    assert cfi_check(1, 5) == []
    assert cfi_check(1, 1)[0].n == 1
    ws = cfi_check(14, 7)
    assert len(ws) == 4
    assert all(w.filters == w.ideals == 7 for w in ws)
    with pytest.raises(SizeBound):
        cfi_check(5, 12, "exhaustive")


def test_cfi_construct():
    (w,) = cfi_check(7, 7, "construct")
    assert is_isomorphic(w.lattice, evaluate("C(3)#(C(2)+B2+C(2))"))
    (w,) = cfi_check(12, 11, "construct")
    assert is_isomorphic(w.lattice, evaluate("(C(4)#C(3)#C(3)) + M3 + C(2)"))
    assert cfi_check(1, 20, "construct") == []
    (w,) = cfi_check(15, 14, "construct")
    assert (w.k, w.n, w.filters, w.ideals) == (15, 14, 14, 14)


def test_recipe_table():
    assert len(RECIPES) == 17
    for k, n, e in RECIPES:
        w = witness_for(e)
        assert (w.k, w.n, w.filters, w.ideals) == (k, n, n, n), e
        assert construction_recipe(k, n) == e


def test_repeated_recipe():
    w = witness_for(repeated_recipe(10, 11, 2))
    assert (w.k, w.n) == (100, 21)
