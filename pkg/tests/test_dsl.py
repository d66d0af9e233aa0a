import random

import pytest
from hypothesis import given, settings, strategies as st

from conlat import ParseError, SummandTooSmall, UnknownName, evaluate, isomorphic, named
from conlat.congruence import count_congruences
from conlat.construct import chain, direct_product
from conlat.dsl import (
    Chain, Dual, HorizontalSum, Named, OrdinalSum, Product, build, parse_expr, random_expr,
    render, size_of,
)


def test_parse_shapes():
    assert parse_expr("C(3)") == Chain(3)
    assert parse_expr("N5") == Named("N5")
    assert parse_expr("C(2) + N5 + C(2)") == OrdinalSum((Chain(2), Named("N5"), Chain(2)))
    # '*' binds tighter than '#', which binds tighter than '+'
    assert parse_expr("C(2) + C(3) # C(3) * C(2)") == OrdinalSum(
        (Chain(2), HorizontalSum((Chain(3), Product((Chain(3), Chain(2)))))))
    assert parse_expr("dual(G)") == Dual(Named("G"))


def test_known_expressions():
    L = evaluate("C(2) + N5 + C(2)")
    assert L.n == 7 and count_congruences(L) == 20
    assert isomorphic(evaluate("C(3) # C(3) # C(3)"), named("M3"))
    assert isomorphic(evaluate("C(2) * C(3)"), direct_product([chain(2), chain(3)]))
    assert isomorphic(evaluate("C(3)#C(4)"), named("N5"))


def test_parse_errors_have_positions():
    with pytest.raises(ParseError) as info:
        parse_expr("C(3) + ")
    assert info.value.pos == 7
    with pytest.raises(ParseError) as info:
        parse_expr("C(3) $ C(2)")
    assert info.value.pos == 5
    with pytest.raises(ParseError):
        parse_expr("C(0)")
    with pytest.raises(ParseError):
        parse_expr("(C(3)")
    with pytest.raises(UnknownName):
        parse_expr("Z9")


def test_semantic_errors_surface():
    with pytest.raises(SummandTooSmall):
        evaluate("C(2)#C(3)")


def test_render_examples():
    assert render(parse_expr("(C(2)+C(3))+C(2)")) == "(C(2) + C(3)) + C(2)"
    assert render(parse_expr("C(3)#(C(2)+B2+C(2))")) == "C(3) # (C(2) + B2 + C(2))"


def test_size_of_matches_build():
    rng = random.Random(7)
    for _ in range(100):
        e = random_expr(rng, max_size=14)
        assert size_of(e) == build(e).n


@settings(max_examples=150, deadline=None)
@given(st.integers(min_value=0, max_value=10**9))
def test_render_round_trip(seed):
    e = random_expr(random.Random(seed), max_size=12)
    text = render(e)
    assert parse_expr(text) == e
    assert build(parse_expr(text)) == build(e)
