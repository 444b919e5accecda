"""The PBW basis P_w of the free algebra and its shuffle dual family S_w.

P_w brackets Lyndon words along their standard factorization and multiplies
the Lyndon factors of a general word in decreasing order.  S_w is the dual
family under the word pairing: ``<S_u, P_v> = delta(u, v)``.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .core import Alphabet, Poly, Word, format_rational, pairing, shuffle, shuffle_power
from .lyndon import is_lyndon, lyndon_factorization, std_factorization
from .report import Report


def bracket(p: Poly, q: Poly) -> Poly:
    return p * q - q * p


@lru_cache(maxsize=None)
def pbw_P(w: Word) -> Poly:
    w = tuple(w)
    if len(w) <= 1:
        return Poly.word(w)
    if is_lyndon(w):
        l1, l2 = std_factorization(w)
        return bracket(pbw_P(l1), pbw_P(l2))
    out = Poly.one()
    for l, k in lyndon_factorization(w):
        out = out * pbw_P(l) ** k
    return out


def expand_bracketing(w: Word) -> Poly:
    """Re-expand P_w without memoization; used as a determinism cross-check."""
    w = tuple(w)
    if len(w) <= 1:
        return Poly.word(w)
    if is_lyndon(w):
        l1, l2 = std_factorization(w)
        a, b = expand_bracketing(l1), expand_bracketing(l2)
        return a * b - b * a
    out = Poly.one()
    for l in lyndon_factorization(w).flat():
        out = out * expand_bracketing(l)
    return out


@lru_cache(maxsize=None)
def dual_S(w: Word) -> Poly:
    w = tuple(w)
    if len(w) <= 1:
        return Poly.word(w)
    if is_lyndon(w):
        return Poly.word(w[:1]) * dual_S(w[1:])
    out = Poly.one()
    denom = 1
    for l, k in lyndon_factorization(w):
        out = shuffle(out, shuffle_power(dual_S(l), k))
        for j in range(2, k + 1):
            denom *= j
    return out / denom


def multidegree(w: Word) -> tuple[tuple, int]:
    return tuple(sorted((x, w.count(x)) for x in set(w)))


def check_triangular(w: Word) -> bool:
    """P_w = w + (terms on lexicographically larger words)."""
    p = pbw_P(w)
    if p.coeff(tuple(w)) != 1:
        return False
    return all(u > tuple(w) for u in p if u != tuple(w))


def check_duality(alphabet: Alphabet, n: int, use_multidegree: bool = False) -> Report:
    """Pair S_u against P_v for all words of length <= n.

    With ``use_multidegree`` pairs of distinct multidegree are assumed to
    vanish instead of being computed.
    """
    fmt = alphabet.format
    words = alphabet.words_up_to(n)
    rep = Report("pbw-duality", {"alphabet": "".join(alphabet.letters), "max_len": n})
    degs = {w: multidegree(w) for w in words}
    for u in words:
        s = dual_S(u)
        for v in words:
            if use_multidegree and degs[u] != degs[v]:
                value = Fraction(0)
            else:
                value = pairing(s, pbw_P(v))
            rep.checks_run += 1
            expected = 1 if u == v else 0
            if value != expected:
                rep.violation(f"<S_{fmt(u)}, P_{fmt(v)}>", expected, format_rational(value))
    rep.extra["pairs_checked"] = rep.checks_run
    return rep


def check_triangular_all(alphabet: Alphabet, n: int) -> Report:
    rep = Report("pbw-triangular", {"alphabet": "".join(alphabet.letters), "max_len": n})
    for w in alphabet.words_up_to(n):
        rep.checks_run += 1
        if not check_triangular(w):
            rep.violation(f"P_{alphabet.format(w)}", "w + sum_{u>w} c_u u", "not triangular")
    return rep
