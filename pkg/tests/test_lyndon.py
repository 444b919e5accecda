from hypothesis import given, strategies as st
import pytest

from pbwfact.core import Alphabet
from pbwfact.lyndon import is_lyndon, iter_lyndon, lyndon_factorization, lyndon_up_to, std_factorization

AB = Alphabet("ab")
ABC = Alphabet("abc")

words = st.lists(st.integers(0, 2), min_size=1, max_size=8).map(tuple)


def lyndon_oracle(w):
    """Strictly smaller than every proper rotation."""
    return bool(w) and all(w < w[i:] + w[:i] for i in range(1, len(w)))


def witt(k, n):
    """Number of Lyndon words of length n over k letters (necklace formula)."""
    def mobius(m):
        out, p = 1, 2
        while p * p <= m:
            if m % p == 0:
                m //= p
                if m % p == 0:
                    return 0
                out = -out
            p += 1
        return -out if m > 1 else out

    return sum(mobius(d) * k ** (n // d) for d in range(1, n + 1) if n % d == 0) // n


def test_binary_lyndon_words_up_to_four():
    got = [AB.format(w) for w in lyndon_up_to(AB, 4)]
    assert got == ["a", "aaab", "aab", "aabb", "ab", "abb", "abbb", "b"]


@pytest.mark.parametrize("k,n", [(2, m) for m in range(1, 11)] + [(3, m) for m in range(1, 7)])
def test_counts_match_necklace_formula(k, n):
    assert sum(1 for w in iter_lyndon(k, n) if len(w) == n) == witt(k, n)


def test_generation_is_sorted_and_matches_oracle():
    gen = lyndon_up_to(ABC, 5)
    assert gen == sorted(gen)
    brute = sorted(w for w in ABC.words_up_to(5) if lyndon_oracle(w))
    assert gen == brute


@given(words)
def test_is_lyndon_matches_rotation_oracle(w):
    assert is_lyndon(w) == lyndon_oracle(w)


def test_std_factorization_examples():
    assert std_factorization(AB.word("aab")) == (AB.word("a"), AB.word("ab"))
    assert std_factorization(AB.word("abb")) == (AB.word("ab"), AB.word("b"))
    assert std_factorization(AB.word("aabab")) == (AB.word("aab"), AB.word("ab"))
    with pytest.raises(ValueError):
        std_factorization(AB.word("ba"))
    with pytest.raises(ValueError):
        std_factorization(AB.word("a"))


@given(words)
def test_std_factorization_properties(w):
    if len(w) < 2 or not is_lyndon(w):
        return
    l1, l2 = std_factorization(w)
    assert l1 + l2 == w
    assert is_lyndon(l1) and is_lyndon(l2)
    assert l1 < w < l2
    # l2 is the longest proper Lyndon suffix
    assert all(not is_lyndon(w[i:]) for i in range(1, len(w) - len(l2)))


@given(words)
def test_lyndon_factorization_unique_nonincreasing(w):
    f = lyndon_factorization(w)
    flat = f.flat()
    assert f.word() == w
    assert all(is_lyndon(l) for l in flat)
    assert all(flat[i] >= flat[i + 1] for i in range(len(flat) - 1))
    # grouped factors are distinct and strictly decreasing
    keys = [l for l, _ in f.factors]
    assert all(keys[i] > keys[i + 1] for i in range(len(keys) - 1))


def test_lyndon_factorization_example():
    f = lyndon_factorization(AB.word("babaab"))
    assert [(AB.format(l), k) for l, k in f.factors] == [("b", 1), ("ab", 1), ("aab", 1)]
    f = lyndon_factorization(AB.word("bbaa"))
    assert [(AB.format(l), k) for l, k in f.factors] == [("b", 2), ("a", 2)]
