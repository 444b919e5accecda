"""The quasi-shuffle (stuffle) algebra on Y = {y_1, y_2, ...}.

A Y-word is a tuple of positive integers, ``(1, 3)`` standing for y_1 y_3.
Polynomials are ordinary :class:`~pbwfact.core.Poly` objects without an
alphabet.  All computations are confined to a fixed weight.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from .core import Poly, TensorPoly, format_poly, format_rational
from .linalg import rank
from .lyndon import is_lyndon
from .report import Report

YWord = tuple


def weight(w: YWord) -> int:
    return sum(w)


def format_yword(w: YWord) -> str:
    return "".join(f"y{s}" for s in w) or "1"


def parse_yword(s: str) -> YWord:
    """'y1y3' -> (1, 3); the empty string or '1' is the empty word."""
    if s in ("", "1"):
        return ()
    parts = s.split("y")
    if parts[0] != "" or any(not p.isdigit() or int(p) < 1 for p in parts[1:]):
        raise ValueError(f"not a Y-word: {s!r}")
    return tuple(int(p) for p in parts[1:])


def format_ypoly(p: Poly) -> str:
    return format_poly(p, lambda w: format_yword(w) if w else "", key=lambda kv: (len(kv[0]), kv[0]))


@lru_cache(maxsize=None)
def stuffle_words(u: YWord, v: YWord) -> tuple[tuple[YWord, int], ...]:
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    acc: dict[YWord, int] = {}
    i, j = u[0], v[0]
    for head, a, b in (((i,), u[1:], v), ((j,), u, v[1:]), ((i + j,), u[1:], v[1:])):
        for w, c in stuffle_words(a, b):
            acc[head + w] = acc.get(head + w, 0) + c
    return tuple(acc.items())


def stuffle(p: Poly, q: Poly) -> Poly:
    acc: dict = {}
    for u, a in p.items():
        for v, b in q.items():
            for w, m in stuffle_words(u, v):
                acc[w] = acc.get(w, 0) + a * b * m
    return Poly(acc)


def compositions(n: int) -> Iterator[YWord]:
    """Compositions of n in lexicographic order of index sequences."""
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in compositions(n - first):
            yield (first,) + rest


def words_of_weight(n: int) -> list[YWord]:
    if n < 0:
        raise ValueError("weight must be >= 0")
    return list(compositions(n))


@lru_cache(maxsize=None)
def letter_coproduct(s: int) -> tuple[tuple[tuple[YWord, YWord], int], ...]:
    terms = [(((s,), ()), 1), (((), (s,)), 1)]
    terms += [(((a,), (s - a,)), 1) for a in range(1, s)]
    return tuple(terms)


@lru_cache(maxsize=None)
def coproduct_word(w: YWord) -> tuple[tuple[tuple[YWord, YWord], int], ...]:
    """Dual of the stuffle, multiplicative for concatenation."""
    if not w:
        return ((((), ()), 1),)
    acc: dict = {}
    for (a, b), c in letter_coproduct(w[0]):
        for (u, v), d in coproduct_word(w[1:]):
            key = (a + u, b + v)
            acc[key] = acc.get(key, 0) + c * d
    return tuple(acc.items())


def stuffle_coproduct(p: Poly) -> TensorPoly:
    acc: dict = {}
    for w, c in p.items():
        for key, m in coproduct_word(w):
            acc[key] = acc.get(key, 0) + c * m
    return TensorPoly(acc)


def stuffle_from_coproduct(u: YWord, v: YWord) -> Poly:
    """u stuffle v recovered by duality: sum_w <u (x) v, Delta(w)> w."""
    out = {}
    for w in words_of_weight(weight(u) + weight(v)):
        c = dict(coproduct_word(w)).get((u, v), 0)
        if c:
            out[w] = c
    return Poly(out)


def check_stuffle_duality(n: int) -> Report:
    """<u stuffle v, w> = <u (x) v, Delta(w)> for all |u| + |v| = |w| <= n."""
    rep = Report("stuffle-duality", {"max_weight": n})
    for total in range(n + 1):
        ws = words_of_weight(total)
        for wu in range(total + 1):
            for u in words_of_weight(wu):
                for v in words_of_weight(total - wu):
                    prod = stuffle(Poly.word(u), Poly.word(v))
                    for w in ws:
                        lhs = prod.coeff(w)
                        rhs = stuffle_coproduct(Poly.word(w)).coeff((u, v))
                        rep.checks_run += 1
                        if lhs != rhs:
                            rep.violation(
                                f"u={format_yword(u)} v={format_yword(v)} w={format_yword(w)}",
                                format_rational(lhs),
                                format_rational(rhs),
                            )
    return rep


def is_primitive(p: Poly) -> bool:
    expected = TensorPoly({(w, ()): c for w, c in p.items()}) + TensorPoly(
        {((), w): c for w, c in p.items()}
    )
    return stuffle_coproduct(p) == expected


check_primitive = is_primitive


@lru_cache(maxsize=None)
def reduced_coproduct_word(w: YWord) -> tuple[tuple[tuple[YWord, YWord], int], ...]:
    return tuple(((u, v), c) for (u, v), c in coproduct_word(w) if u and v)


@lru_cache(maxsize=None)
def _conv_power(w: YWord, k: int) -> Poly:
    """(I - eta eps)^{*k} at w, with concatenation as the outer product."""
    if not w:
        return Poly()
    if k == 1:
        return Poly.word(w)
    acc: dict = {}
    for (u, v), c in reduced_coproduct_word(w):
        for x, d in _conv_power(v, k - 1).items():
            acc[u + x] = acc.get(u + x, 0) + c * d
    return Poly(acc)


@lru_cache(maxsize=None)
def log_star_identity(w: YWord) -> Poly:
    """The convolution logarithm of the identity map, evaluated at the word w."""
    w = tuple(w)
    out = Poly()
    for k in range(1, weight(w) + 1):
        out = out + _conv_power(w, k).scale(Fraction((-1) ** (k + 1), k))
    return out


def log_star(p: Poly) -> Poly:
    out = Poly()
    for w, c in p.items():
        out = out + log_star_identity(w).scale(c)
    return out


def log_star_letter_expansion(p: int) -> Poly:
    """sum_k (-1)^{k+1}/k sum over compositions (p_1..p_k) of p of y_{p_1}...y_{p_k}."""
    return Poly({c: Fraction((-1) ** (len(c) + 1), len(c)) for c in compositions(p)})


def primitive_dimensions(n: int) -> list[int]:
    """Rank of the log_* image of each weight-m component, for m = 1..n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    dims = []
    for m in range(1, n + 1):
        ws = words_of_weight(m)
        col = {w: i for i, w in enumerate(ws)}
        rows = []
        for w in ws:
            row = [Fraction(0)] * len(ws)
            for u, c in log_star_identity(w).items():
                row[col[u]] = c
            rows.append(row)
        dims.append(rank(rows))
    return dims


def lyndon_count_by_weight(n: int) -> list[int]:
    """Number of Lyndon Y-words of each weight 1..n (order y_1 < y_2 < ...)."""
    return [sum(1 for w in words_of_weight(m) if is_lyndon(w)) for m in range(1, n + 1)]


def pbw_dimension_series(dims: list[int]) -> list[int]:
    """Coefficients 1..n of prod_m (1 - t^m)^{-dims[m-1]}."""
    n = len(dims)
    series = [1] + [0] * n
    for m, d in enumerate(dims, start=1):
        for _ in range(d):
            for j in range(m, n + 1):
                series[j] += series[j - m]
    return series[1:]


def verify_stuffle(n: int) -> Report:
    """Duality, Hopf axioms and projector primitivity up to weight n."""
    rep = Report("stuffle", {"max_weight": n})
    rep.merge(check_stuffle_duality(n), "duality")
    words = [w for m in range(n + 1) for w in words_of_weight(m)]
    for u in words:
        for v in words:
            if weight(u) + weight(v) > n:
                continue
            rep.checks_run += 1
            a = stuffle(Poly.word(u), Poly.word(v))
            if a != stuffle(Poly.word(v), Poly.word(u)):
                rep.violation(f"commutativity {format_yword(u)},{format_yword(v)}", "equal", "differ")
    for w in words:
        d = stuffle_coproduct(Poly.word(w))
        rep.checks_run += 2
        flipped = TensorPoly({(b, a): c for (a, b), c in d.items()})
        if flipped != d:
            rep.violation(f"cocommutativity {format_yword(w)}", "symmetric", "asymmetric")
        if not _coassociative(w):
            rep.violation(f"coassociativity {format_yword(w)}", "equal", "differ")
        if w:
            rep.checks_run += 1
            if not is_primitive(log_star_identity(w)):
                rep.violation(f"log_* primitivity {format_yword(w)}", "primitive", "not primitive")
    dims = primitive_dimensions(n) if n >= 1 else []
    rep.checks_run += len(dims)
    for m, total in enumerate(pbw_dimension_series(dims), start=1):
        if total != 2 ** (m - 1):
            rep.violation(f"PBW dimension count at weight {m}", 2 ** (m - 1), total)
    rep.extra["primitive_dimensions"] = dims
    return rep


def _coassociative(w: YWord) -> bool:
    left: dict = {}
    right: dict = {}
    for (a, b), c in coproduct_word(w):
        for (a1, a2), d in coproduct_word(a):
            key = (a1, a2, b)
            left[key] = left.get(key, 0) + c * d
        for (b1, b2), d in coproduct_word(b):
            key = (a, b1, b2)
            right[key] = right.get(key, 0) + c * d
    return {k: v for k, v in left.items() if v} == {k: v for k, v in right.items() if v}
