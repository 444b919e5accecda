"""Degree-truncated check of the factorization sum_w w (x) w = prod exp(S_l (x) P_l).

Products of tensors use the shuffle on the left leg and concatenation on the
right leg.  The ordered product runs over Lyndon words in decreasing order.
"""
from __future__ import annotations

from typing import Callable, Sequence

from .core import Alphabet, Poly, TensorPoly, Word, WordLaw, format_rational, shuffle, tensor_mul
from .lyndon import lyndon_up_to
from .pbw import dual_S, pbw_P
from .report import Report


def _min_degree(t: TensorPoly, degree: Callable[[tuple], int]) -> int:
    degs = set()
    for u, v in t:
        du, dv = degree(u), degree(v)
        if du != dv:
            raise ValueError(f"tensor term {u!r} (x) {v!r} has unequal leg degrees {du} != {dv}")
        if dv < 1:
            raise ValueError("tensor has a constant term; exp needs positive degree")
        degs.add(dv)
    return min(degs)


def truncated_exp(
    t: TensorPoly,
    n: int,
    left_product: str | WordLaw = "shuffle",
    right_product: str | WordLaw = "conc",
    degree: Callable[[tuple], int] = len,
) -> TensorPoly:
    """sum_{k <= n/d} t^k / k!, truncated at right-leg degree n."""
    if n < 0:
        raise ValueError("truncation degree must be >= 0")
    one = TensorPoly.one()
    if not t:
        return one
    d = _min_degree(t, degree)
    out, power = one, one
    for k in range(1, n // d + 1):
        power = tensor_mul(power, t, left_product, right_product, n, degree) / k
        out = out + power
    return out


def exp_factor(l: Word, n: int) -> TensorPoly:
    return truncated_exp(TensorPoly.outer(dual_S(l), pbw_P(l)), n)


def ordered_product(
    factors: Sequence[TensorPoly],
    n: int,
    left_product: str | WordLaw = "shuffle",
    right_product: str | WordLaw = "conc",
    degree: Callable[[tuple], int] = len,
) -> TensorPoly:
    out = TensorPoly.one()
    for f in factors:
        out = tensor_mul(out, f, left_product, right_product, n, degree)
    return out


def schuetzenberger_product(
    alphabet: Alphabet, n: int, order: str | Sequence[Word] = "decreasing"
) -> TensorPoly:
    """prod over Lyndon words of length <= n of exp(S_l (x) P_l), truncated at n.

    ``order`` is "decreasing" (the identity), "increasing", or an explicit
    sequence of Lyndon words fixing the left-to-right factor order.
    """
    if n < 0:
        raise ValueError("truncation degree must be >= 0")
    if isinstance(order, str):
        lyn = lyndon_up_to(alphabet, n)
        if order == "decreasing":
            lyn.reverse()
        elif order != "increasing":
            raise ValueError(f"unknown product order {order!r}")
    else:
        lyn = [tuple(l) for l in order]
    return ordered_product([exp_factor(l, n) for l in lyn], n)


def diagonal_series(alphabet: Alphabet, n: int) -> TensorPoly:
    return TensorPoly({(w, w): 1 for w in alphabet.words_up_to(n)})


def compare_tensors(
    lhs: TensorPoly, rhs: TensorPoly, report: Report, fmt: Callable[[Word], str]
) -> None:
    keys = set(lhs.keys()) | set(rhs.keys())
    report.checks_run += len(keys)
    for key in sorted(keys):
        a, b = lhs.coeff(key), rhs.coeff(key)
        if a != b:
            report.violation(f"{fmt(key[0])}(x){fmt(key[1])}", format_rational(a), format_rational(b))


def verify_sf(
    alphabet: Alphabet, n: int, order: str | Sequence[Word] = "decreasing"
) -> Report:
    """Exact comparison of the diagonal series (expected) with the ordered product."""
    if n < 0:
        raise ValueError("truncation degree must be >= 0")
    lhs = diagonal_series(alphabet, n)
    rhs = schuetzenberger_product(alphabet, n, order)
    params = {"alphabet": "".join(alphabet.letters), "degree": n}
    if not isinstance(order, str):
        params["order"] = [alphabet.format(l) for l in order]
    else:
        params["order"] = order
    rep = Report("sf-free", params)
    compare_tensors(lhs, rhs, rep, _fmt(alphabet))
    rep.extra.update(
        degree=n,
        lyndon_count=len(lyndon_up_to(alphabet, n)),
        terms_lhs=len(lhs),
        terms_rhs=len(rhs),
        mismatches=rep.violations,
    )
    rep.artifacts["lhs"], rep.artifacts["rhs"] = lhs, rhs
    return rep


def _fmt(alphabet: Alphabet) -> Callable[[Word], str]:
    return lambda w: alphabet.format(w) or "1"


def commutative_power_check(k: int) -> bool:
    """x^k shuffled with x equals (k+1) x^(k+1)."""
    x = (0,)
    return shuffle(Poly.word(x * k), Poly.word(x)) == Poly.word(x * (k + 1), k + 1)


def commutative_diagonal(k: int, n: int) -> TensorPoly:
    """sum over multi-indices of weight <= n of X^a (x) X^a, on letters 0..k-1.

    Monomials are written as nondecreasing words.
    """
    from itertools import combinations_with_replacement

    return TensorPoly(
        {(w, w): 1 for d in range(n + 1) for w in combinations_with_replacement(range(k), d)}
    )


def power_sum_factor(n: int) -> TensorPoly:
    """sum_{j <= n} x^j (x) x^j for the single letter x = 0."""
    return TensorPoly({((0,) * j, (0,) * j): 1 for j in range(n + 1)})


def single_letter_exp_matches(n: int) -> bool:
    x = TensorPoly({((0,), (0,)): 1})
    return truncated_exp(x, n) == power_sum_factor(n)


def swapped_orders(alphabet: Alphabet, n: int) -> list[tuple[int, list[Word]]]:
    """Decreasing Lyndon order with one adjacent pair transposed, for each position."""
    lyn = list(reversed(lyndon_up_to(alphabet, n)))
    out = []
    for i in range(len(lyn) - 1):
        o = list(lyn)
        o[i], o[i + 1] = o[i + 1], o[i]
        out.append((i, o))
    return out
