import pytest

from pbwfact.core import Alphabet, TensorPoly
from pbwfact.factorization import (
    commutative_diagonal,
    commutative_power_check,
    diagonal_series,
    exp_factor,
    power_sum_factor,
    schuetzenberger_product,
    single_letter_exp_matches,
    swapped_orders,
    truncated_exp,
    verify_sf,
)
from pbwfact.lyndon import lyndon_up_to

AB = Alphabet("ab")
ABC = Alphabet("abc")


@pytest.mark.parametrize("alphabet,n", [(AB, 0), (AB, 1), (AB, 3), (AB, 5), (ABC, 2), (ABC, 4), (Alphabet("x"), 6)])
def test_factorization_identity(alphabet, n):
    rep = verify_sf(alphabet, n)
    assert rep.ok, rep.summary()
    assert rep.extra["terms_lhs"] == rep.extra["terms_rhs"] == len(alphabet.words_up_to(n))
    assert rep.extra["lyndon_count"] == len(lyndon_up_to(alphabet, n))


def test_report_shape():
    d = verify_sf(AB, 3).to_dict()
    assert d["status"] == "pass" and d["mismatches"] == []
    assert d["parameters"] == {"alphabet": "ab", "degree": 3, "order": "decreasing"}


def test_increasing_order_fails():
    rep = verify_sf(AB, 3, "increasing")
    assert not rep.ok
    # the first visible defect sits in degree 2
    assert verify_sf(AB, 2, "increasing").violations


@pytest.mark.parametrize("alphabet,n", [(AB, 3), (AB, 4), (AB, 5), (ABC, 3)])
def test_adjacent_swaps_are_invisible_after_truncation(alphabet, n):
    # consecutive Lyndon words u < v of length <= n always have |uv| > n,
    # otherwise uv would be a Lyndon word strictly between them; so the two
    # exponentials commute modulo the truncation
    lyn = lyndon_up_to(alphabet, n)
    for u, v in zip(lyn, lyn[1:]):
        assert len(u) + len(v) > n
    for _, order in swapped_orders(alphabet, n):
        assert verify_sf(alphabet, n, order).ok


def test_non_adjacent_swap_is_detected():
    order = list(reversed(lyndon_up_to(AB, 3)))
    # exchange b (first) and a (last)
    order[0], order[-1] = order[-1], order[0]
    rep = verify_sf(AB, 3, order)
    assert not rep.ok
    assert rep.parameters["order"][0] == "a"


def test_exponential_of_letter():
    assert single_letter_exp_matches(6)
    x = TensorPoly({((0,), (0,)): 1})
    assert truncated_exp(x, 0) == TensorPoly.one()
    assert truncated_exp(x, 4) == power_sum_factor(4)


def test_exp_rejects_unbalanced_or_constant_terms():
    with pytest.raises(ValueError):
        truncated_exp(TensorPoly({((0, 0), (0,)): 1}), 3)
    with pytest.raises(ValueError):
        truncated_exp(TensorPoly.one(), 3)


def test_exp_factor_first_terms():
    # exp(S_ab (x) P_ab) up to degree 2 is 1 + ab (x) (ab - ba)
    t = exp_factor((0, 1), 2)
    assert t == TensorPoly({((), ()): 1, ((0, 1), (0, 1)): 1, ((0, 1), (1, 0)): -1})


@pytest.mark.parametrize("k", range(0, 9))
def test_power_identity(k):
    assert commutative_power_check(k)


def test_commutative_diagonal_counts():
    # monomials of degree <= 6 in two variables
    assert len(commutative_diagonal(2, 6)) == 28


def test_diagonal_series():
    assert diagonal_series(AB, 2) == TensorPoly({(w, w): 1 for w in AB.words_up_to(2)})


def test_explicit_order_roundtrip():
    lyn = list(reversed(lyndon_up_to(AB, 4)))
    assert schuetzenberger_product(AB, 4, lyn) == schuetzenberger_product(AB, 4)


def test_negative_degree_rejected():
    with pytest.raises(ValueError):
        verify_sf(AB, -1)
