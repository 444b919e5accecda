from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from pbwfact.core import Poly, TensorPoly
from pbwfact.stuffle import (
    check_primitive,
    check_stuffle_duality,
    compositions,
    coproduct_word,
    format_ypoly,
    format_yword,
    log_star,
    log_star_identity,
    log_star_letter_expansion,
    lyndon_count_by_weight,
    parse_yword,
    pbw_dimension_series,
    primitive_dimensions,
    stuffle,
    stuffle_coproduct,
    stuffle_from_coproduct,
    verify_stuffle,
    words_of_weight,
)

ywords = st.lists(st.integers(1, 3), max_size=3).map(tuple)


def stuffle_oracle(u, v):
    """Recursion on the last letters instead of the first ones."""
    if not u:
        return {v: 1}
    if not v:
        return {u: 1}
    acc = {}
    a, b = u[-1], v[-1]
    for tail, x, y in (((a,), u[:-1], v), ((b,), u, v[:-1]), ((a + b,), u[:-1], v[:-1])):
        for w, c in stuffle_oracle(x, y).items():
            acc[w + tail] = acc.get(w + tail, 0) + c
    return acc


def Y(s):
    return Poly.word(parse_yword(s))


def test_yword_roundtrip():
    assert parse_yword("y1y13") == (1, 13)
    assert format_yword((2, 1)) == "y2y1"
    assert parse_yword("1") == ()
    for bad in ("y0", "x1", "y", "y1y"):
        with pytest.raises(ValueError):
            parse_yword(bad)


def test_stuffle_examples():
    assert stuffle(Y("y1"), Y("y1")) == Poly({(1, 1): 2, (2,): 1})
    assert stuffle(Y("y1"), Y("y2")) == Poly({(1, 2): 1, (2, 1): 1, (3,): 1})
    assert stuffle(Poly.one(), Y("y3")) == Y("y3")


@given(ywords, ywords)
def test_stuffle_matches_oracle(u, v):
    assert stuffle(Poly.word(u), Poly.word(v)) == Poly(stuffle_oracle(u, v))


@settings(max_examples=50)
@given(ywords, ywords, ywords)
def test_stuffle_associative_commutative(u, v, w):
    pu, pv, pw = Poly.word(u), Poly.word(v), Poly.word(w)
    assert stuffle(pu, pv) == stuffle(pv, pu)
    assert stuffle(stuffle(pu, pv), pw) == stuffle(pu, stuffle(pv, pw))


@pytest.mark.parametrize("n", range(1, 11))
def test_words_per_weight(n):
    ws = words_of_weight(n)
    assert len(ws) == 2 ** (n - 1)
    assert len(set(ws)) == len(ws)


def test_letter_coproduct():
    d = stuffle_coproduct(Y("y3"))
    assert d == TensorPoly({((3,), ()): 1, ((), (3,)): 1, ((1,), (2,)): 1, ((2,), (1,)): 1})


@given(ywords, ywords)
def test_coproduct_is_concatenation_morphism(u, v):
    from pbwfact.core import tensor_mul

    lhs = stuffle_coproduct(Poly.word(u + v))
    rhs = tensor_mul(stuffle_coproduct(Poly.word(u)), stuffle_coproduct(Poly.word(v)), "conc", "conc", degree=sum)
    assert lhs == rhs


def test_duality_exhaustive_to_five():
    rep = check_stuffle_duality(5)
    assert rep.ok
    assert rep.checks_run > 0


light = st.lists(st.integers(1, 2), max_size=3).map(tuple)


@given(light, light)
def test_stuffle_recovered_from_coproduct(u, v):
    assert stuffle_from_coproduct(u, v) == stuffle(Poly.word(u), Poly.word(v))


def test_log_star_y4():
    got = log_star_identity((4,))
    half, third, quarter = Fraction(1, 2), Fraction(1, 3), Fraction(1, 4)
    expected = Poly(
        {
            (4,): 1,
            (1, 3): -half,
            (2, 2): -half,
            (3, 1): -half,
            (1, 1, 2): third,
            (1, 2, 1): third,
            (2, 1, 1): third,
            (1, 1, 1, 1): -quarter,
        }
    )
    assert got == expected
    assert format_ypoly(got).startswith("y4 - 1/2*y1y3")


@pytest.mark.parametrize("p", range(1, 8))
def test_log_star_letter_matches_composition_sum(p):
    assert log_star_identity((p,)) == log_star_letter_expansion(p)


@pytest.mark.parametrize("n", range(1, 7))
def test_log_star_outputs_are_primitive(n):
    for w in words_of_weight(n):
        assert check_primitive(log_star_identity(w)), format_yword(w)


def test_letters_above_one_are_not_primitive():
    assert check_primitive(Y("y1"))
    assert not check_primitive(Y("y2"))


@settings(max_examples=25)
@given(st.dictionaries(st.lists(st.integers(1, 2), min_size=1, max_size=3).map(tuple), st.integers(-2, 2), max_size=3))
def test_log_star_is_idempotent(spec):
    p = Poly(spec)
    q = log_star(p)
    assert log_star(q) == q


def test_primitive_dimensions_match_lyndon_counts():
    dims = primitive_dimensions(7)
    assert dims == [1, 1, 2, 3, 6, 9, 18]
    assert dims == lyndon_count_by_weight(7)
    assert pbw_dimension_series(dims) == [2 ** (m - 1) for m in range(1, 8)]


def test_verify_suite():
    rep = verify_stuffle(5)
    assert rep.ok, rep.summary()
    assert rep.extra["primitive_dimensions"] == [1, 1, 2, 3, 6]


def test_compositions_order():
    assert list(compositions(3)) == [(1, 1, 1), (1, 2), (2, 1), (3,)]
    assert coproduct_word(()) == ((((), ()), 1),)
