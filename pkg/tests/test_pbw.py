from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from pbwfact.core import Alphabet, Poly, pairing
from pbwfact.linalg import inverse
from pbwfact.pbw import check_duality, check_triangular, check_triangular_all, dual_S, expand_bracketing, multidegree, pbw_P

AB = Alphabet("ab")
ABC = Alphabet("abc")


def P(s):
    return pbw_P(AB.word(s))


def S(s):
    return dual_S(AB.word(s))


def poly(spec):
    return Poly({AB.word(k): v for k, v in spec.items()})


def test_pbw_examples():
    assert P("a") == poly({"a": 1})
    assert P("ab") == poly({"ab": 1, "ba": -1})
    assert P("aab") == poly({"aab": 1, "aba": -2, "baa": 1})
    assert P("abb") == poly({"abb": 1, "bab": -2, "bba": 1})
    # non-Lyndon words: decreasing products of Lyndon factors
    assert P("ba") == poly({"ba": 1})
    assert P("bab") == poly({"bab": 1, "bba": -1})
    assert P("abab") == poly({"abab": 1, "abba": -1, "baab": -1, "baba": 1})


def test_dual_examples():
    # frozen from the matrix-inversion oracle below
    assert S("ab") == poly({"ab": 1})
    assert S("ba") == poly({"ab": 1, "ba": 1})
    assert S("bab") == poly({"bab": 1, "abb": 2})
    assert S("bba") == poly({"abb": 1, "bab": 1, "bba": 1})
    assert S("abab") == poly({"abab": 1, "aabb": 2})
    assert S("aabb") == poly({"aabb": 1})


def dual_by_inversion(alphabet, n):
    """S_u from the inverse transpose of the P-matrix, word length n."""
    ws = list(alphabet.words(n))
    pos = {w: i for i, w in enumerate(ws)}
    m = [[Fraction(0)] * len(ws) for _ in ws]
    for i, v in enumerate(ws):
        for u, c in pbw_P(v).items():
            m[i][pos[u]] = c
    inv = inverse(m)
    return {u: Poly({w: inv[pos[w]][pos[u]] for w in ws}) for u in ws}


@pytest.mark.parametrize("alphabet,n", [(AB, 1), (AB, 2), (AB, 3), (AB, 4), (AB, 5), (ABC, 3)])
def test_dual_matches_inversion_oracle(alphabet, n):
    oracle = dual_by_inversion(alphabet, n)
    for u, s in oracle.items():
        assert dual_S(u) == s, alphabet.format(u)


def test_duality_report_binary():
    rep = check_duality(AB, 5)
    assert rep.ok
    assert rep.checks_run == 63 * 63
    assert rep.extra["pairs_checked"] == rep.checks_run


def test_duality_ternary_with_multidegree_shortcut():
    full = check_duality(ABC, 3)
    fast = check_duality(ABC, 3, use_multidegree=True)
    assert full.ok and fast.ok
    assert full.checks_run == fast.checks_run


def test_triangularity_report():
    assert check_triangular_all(AB, 6).ok
    assert check_triangular_all(ABC, 4).ok


@given(st.lists(st.integers(0, 2), max_size=6).map(tuple))
def test_memoized_and_fresh_expansions_agree(w):
    assert pbw_P(w) == expand_bracketing(w)


@given(st.lists(st.integers(0, 2), max_size=6).map(tuple))
def test_homogeneous_in_multidegree(w):
    d = multidegree(w)
    assert all(multidegree(u) == d for u in pbw_P(w))
    assert all(multidegree(u) == d for u in dual_S(w))
    assert check_triangular(w)


@given(st.lists(st.integers(0, 1), min_size=1, max_size=5).map(tuple))
def test_dual_is_unitriangular_from_below(w):
    # S_w = w + lower words, the mirror of P_w = w + higher words
    s = dual_S(w)
    assert s.coeff(w) == 1
    assert all(u < w for u in s if u != w)
    assert pairing(s, pbw_P(w)) == 1
