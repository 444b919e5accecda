"""Free partially commutative monoids M(X, theta) at desk scale.

A trace is represented by its lexicographically least representative word
(its canonical form); trace polynomials are :class:`~pbwfact.core.Poly`
objects keyed by canonical forms.  Traces are *ordered* by their
lexicographically greatest representative (:func:`order_key`); with the least
representative as order key some relations admit traces with zero or two
nonincreasing Lyndon factorizations.

Conjugacy, powers and factorizations are found by brute-force closure, so
every entry point enforces a size cap.
"""
from __future__ import annotations

import itertools
from collections import deque
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from .core import Alphabet, Poly, TensorPoly, Word, deshuffle_word, format_rational, shuffle_words
from .factorization import compare_tensors, ordered_product, truncated_exp
from .linalg import inverse
from .report import Report

MAX_LENGTH = 6
MAX_ALPHABET = 4


class Independence:
    """Symmetric antireflexive commutation relation on letter indices."""

    __slots__ = ("pairs", "_hash")

    def __init__(self, pairs: Iterable[tuple[int, int]] = ()):
        ps = set()
        for x, y in pairs:
            if x == y:
                raise ValueError(f"independence must be antireflexive, got ({x}, {y})")
            ps.add(frozenset((x, y)))
        self.pairs = frozenset(ps)
        self._hash = hash(self.pairs)

    @classmethod
    def full(cls, size: int) -> "Independence":
        return cls(itertools.combinations(range(size), 2))

    @classmethod
    def parse(cls, spec: str, alphabet: Alphabet) -> "Independence":
        """'a,c' or 'ac,bd' or 'a,c,b,d'; 'all' for full commutation, '' for none."""
        spec = spec.strip()
        if spec == "all":
            return cls.full(len(alphabet))
        if not spec:
            return cls()
        tokens = [t.strip() for t in spec.split(",") if t.strip()]
        if all(len(t) == 2 for t in tokens):
            raw = [(t[0], t[1]) for t in tokens]
        elif all(len(t) == 1 for t in tokens) and len(tokens) % 2 == 0:
            raw = list(zip(tokens[::2], tokens[1::2]))
        else:
            raise ValueError(f"cannot parse independence relation {spec!r}")
        return cls((alphabet.index(x), alphabet.index(y)) for x, y in raw)

    def commute(self, x, y) -> bool:
        return frozenset((x, y)) in self.pairs

    def __eq__(self, other) -> bool:
        return isinstance(other, Independence) and self.pairs == other.pairs

    def __hash__(self) -> int:
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.pairs)

    def format(self, alphabet: Alphabet) -> str:
        return ",".join(
            "".join(alphabet.letters[i] for i in sorted(p)) for p in sorted(sorted(p) for p in self.pairs)
        )

    def __repr__(self) -> str:
        return f"Independence({sorted(tuple(sorted(p)) for p in self.pairs)})"


def _check_cap(n: int, size: int | None = None, max_length: int = MAX_LENGTH) -> None:
    if n > max_length:
        raise ValueError(f"trace computations are capped at length {max_length}, got {n}")
    if size is not None and size > MAX_ALPHABET:
        raise ValueError(f"trace computations are capped at {MAX_ALPHABET} letters, got {size}")


@lru_cache(maxsize=None)
def normal_form(w: Word, theta: Independence) -> Word:
    """Lexicographically least word in the commutation class of ``w``."""
    rem = list(w)
    out = []
    while rem:
        best = None
        for pos, x in enumerate(rem):
            if (best is None or x < rem[best]) and all(theta.commute(x, y) for y in rem[:pos]):
                best = pos
        out.append(rem.pop(best))
    return tuple(out)


def swap_closure(w: Word, theta: Independence) -> set[Word]:
    """All words reachable by swapping adjacent independent letters."""
    w = tuple(w)
    seen = {w}
    todo = deque([w])
    while todo:
        u = todo.popleft()
        for i in range(len(u) - 1):
            if theta.commute(u[i], u[i + 1]):
                v = u[:i] + (u[i + 1], u[i]) + u[i + 2 :]
                if v not in seen:
                    seen.add(v)
                    todo.append(v)
    return seen


def trace_equal(u: Word, v: Word, theta: Independence) -> bool:
    return normal_form(tuple(u), theta) == normal_form(tuple(v), theta)


def trace_mul_words(theta: Independence):
    @lru_cache(maxsize=None)
    def law(u: Word, v: Word) -> tuple[tuple[Word, int], ...]:
        return ((normal_form(u + v, theta), 1),)

    return law


@lru_cache(maxsize=None)
def trace_coproduct_word(t: Word, theta: Independence) -> dict[tuple[Word, Word], int]:
    """Coproduct of a trace: position subsets of one representative, legs normalized."""
    acc: dict = {}
    for (a, b), m in deshuffle_word(t):
        key = (normal_form(a, theta), normal_form(b, theta))
        acc[key] = acc.get(key, 0) + m
    return acc


def trace_shuffle_words(theta: Independence):
    """The product dual to the trace coproduct.

    Projecting the free shuffle onto traces overcounts: with a, c independent
    it would give a * c = 2 ac.  The dual coefficient of t is instead the
    number of splittings of t into the two factors.
    """

    @lru_cache(maxsize=None)
    def law(u: Word, v: Word) -> tuple[tuple[Word, int], ...]:
        support = {
            normal_form(w, theta)
            for a in swap_closure(u, theta)
            for b in swap_closure(v, theta)
            for w, _ in shuffle_words(a, b)
        }
        out = []
        for t in sorted(support):
            m = trace_coproduct_word(t, theta).get((u, v), 0)
            if m:
                out.append((t, m))
        return tuple(out)

    return law


def trace_coproduct(p: Poly, theta: Independence) -> TensorPoly:
    acc: dict = {}
    for t, c in p.items():
        for key, m in trace_coproduct_word(t, theta).items():
            acc[key] = acc.get(key, 0) + c * m
    return TensorPoly(acc)


@lru_cache(maxsize=None)
def _laws(theta: Independence):
    return trace_mul_words(theta), trace_shuffle_words(theta)


def _bilinear(p: Poly, q: Poly, law) -> Poly:
    acc: dict = {}
    for u, a in p.items():
        for v, b in q.items():
            for w, m in law(u, v):
                acc[w] = acc.get(w, 0) + a * b * m
    return Poly(acc)


def trace_mul(p: Poly, q: Poly, theta: Independence) -> Poly:
    return _bilinear(p, q, _laws(theta)[0])


def trace_shuffle(p: Poly, q: Poly, theta: Independence) -> Poly:
    return _bilinear(p, q, _laws(theta)[1])


def trace_poly(p: Poly, theta: Independence) -> Poly:
    """Project a free polynomial onto canonical forms."""
    acc: dict = {}
    for w, c in p.items():
        t = normal_form(w, theta)
        acc[t] = acc.get(t, 0) + c
    return Poly(acc)


@lru_cache(maxsize=None)
def all_traces(size: int, theta: Independence, n: int) -> tuple[Word, ...]:
    """Canonical forms of all traces of length <= n, in lexicographic order."""
    _check_cap(n, size)
    out = {normal_form(w, theta) for k in range(n + 1) for w in itertools.product(range(size), repeat=k)}
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def factorizations(t: Word, theta: Independence) -> tuple[tuple[Word, Word], ...]:
    """All pairs (u, v) of canonical forms with t = u v in M(X, theta)."""
    out = set()
    for w in swap_closure(t, theta):
        for i in range(len(w) + 1):
            out.add((normal_form(w[:i], theta), normal_form(w[i:], theta)))
    return tuple(sorted(out))


def is_connected(t: Word, theta: Independence) -> bool:
    """Is the dependence graph restricted to the letters of t connected?"""
    letters = sorted(set(t))
    if not letters:
        return False
    seen = {letters[0]}
    todo = [letters[0]]
    while todo:
        x = todo.pop()
        for y in letters:
            if y not in seen and not theta.commute(x, y):
                seen.add(y)
                todo.append(y)
    return len(seen) == len(letters)


@lru_cache(maxsize=None)
def is_trace_primitive(t: Word, theta: Independence) -> bool:
    n = len(t)
    if n == 0:
        return False
    for k in range(2, n + 1):
        if n % k:
            continue
        m = n // k
        for u, _ in factorizations(t, theta):
            if len(u) == m and normal_form(u * k, theta) == t:
                return False
    return True


@lru_cache(maxsize=None)
def conjugacy_class(t: Word, theta: Independence) -> frozenset[Word]:
    seen = {t}
    todo = [t]
    while todo:
        s = todo.pop()
        for u, v in factorizations(s, theta):
            c = normal_form(v + u, theta)
            if c not in seen:
                seen.add(c)
                todo.append(c)
    return frozenset(seen)


@lru_cache(maxsize=None)
def order_key(t: Word, theta: Independence) -> Word:
    """Lexicographically greatest representative; traces are ordered by it."""
    rem = list(t)
    out = []
    while rem:
        best = None
        for pos, x in enumerate(rem):
            if (best is None or x > rem[best]) and all(theta.commute(x, y) for y in rem[:pos]):
                best = pos
        out.append(rem.pop(best))
    return tuple(out)


def trace_cmp(u: Word, v: Word, theta: Independence) -> int:
    a, b = order_key(tuple(u), theta), order_key(tuple(v), theta)
    return (a > b) - (a < b)


def _key(theta: Independence):
    return lambda t: order_key(t, theta)


@lru_cache(maxsize=None)
def is_pc_lyndon(t: Word, theta: Independence, connected: bool = True) -> bool:
    t = normal_form(tuple(t), theta)
    if not t:
        return False
    if connected and not is_connected(t, theta):
        return False
    if not is_trace_primitive(t, theta):
        return False
    return order_key(t, theta) == min(order_key(c, theta) for c in conjugacy_class(t, theta))


def pc_lyndon_up_to(
    alphabet: Alphabet | int, theta: Independence, n: int, connected: bool = True
) -> list[Word]:
    """pc-Lyndon traces of length <= n as canonical words, in increasing trace order."""
    size = alphabet if isinstance(alphabet, int) else len(alphabet)
    lyn = [t for t in all_traces(size, theta, n) if t and is_pc_lyndon(t, theta, connected)]
    return sorted(lyn, key=_key(theta))


@lru_cache(maxsize=None)
def pc_std_factorization(t: Word, theta: Independence, connected: bool = True) -> tuple[Word, Word]:
    """(f, n) with t = f n, f nonempty, n pc-Lyndon and minimal among such."""
    t = normal_form(tuple(t), theta)
    if len(t) < 2:
        raise ValueError(f"standard factorization needs length >= 2, got {t!r}")
    _check_cap(len(t))
    cands = [
        (order_key(v, theta), v, u)
        for u, v in factorizations(t, theta)
        if u and v and is_pc_lyndon(v, theta, connected)
    ]
    if not cands:
        raise ValueError(f"{t!r} has no Lyndon right factor")
    _, n, f = min(cands)
    return f, n


@lru_cache(maxsize=None)
def pc_lyndon_factorizations(
    t: Word, theta: Independence, connected: bool = True, bound: Word | None = None
) -> tuple[tuple[Word, ...], ...]:
    """All factorizations t = l_1 ... l_k into pc-Lyndon traces with l_1 >= ... >= l_k.

    ``bound``, when given, is an upper bound for l_1.
    """
    if not t:
        return ((),)
    top = order_key(bound, theta) if bound is not None else None
    out = set()
    for l, rest in factorizations(t, theta):
        if not l or (top is not None and order_key(l, theta) > top):
            continue
        if not is_pc_lyndon(l, theta, connected):
            continue
        for tail in pc_lyndon_factorizations(rest, theta, connected, l):
            out.add((l,) + tail)
    return tuple(sorted(out))


def pc_lyndon_factorization(t: Word, theta: Independence, connected: bool = True) -> list[tuple[Word, int]]:
    """The unique nonincreasing pc-Lyndon factorization, grouped with multiplicities."""
    t = normal_form(tuple(t), theta)
    facs = pc_lyndon_factorizations(t, theta, connected)
    if len(facs) != 1:
        raise ValueError(f"{t!r} has {len(facs)} nonincreasing Lyndon factorizations")
    grouped: list[list] = []
    for l in facs[0]:
        if grouped and grouped[-1][0] == l:
            grouped[-1][1] += 1
        else:
            grouped.append([l, 1])
    return [(l, k) for l, k in grouped]


@lru_cache(maxsize=None)
def pc_pbw_P(t: Word, theta: Independence, connected: bool = True) -> Poly:
    t = normal_form(tuple(t), theta)
    if len(t) <= 1:
        return Poly.word(t)
    if is_pc_lyndon(t, theta, connected):
        f, n = pc_std_factorization(t, theta, connected)
        a, b = pc_pbw_P(f, theta, connected), pc_pbw_P(n, theta, connected)
        return trace_mul(a, b, theta) - trace_mul(b, a, theta)
    out = Poly.one()
    for l, k in pc_lyndon_factorization(t, theta, connected):
        for _ in range(k):
            out = trace_mul(out, pc_pbw_P(l, theta, connected), theta)
    return out


@lru_cache(maxsize=None)
def multidegree_class(t: Word, theta: Independence) -> tuple[Word, ...]:
    """All traces with the same letter content as t, in increasing trace order."""
    found = {normal_form(w, theta) for w in set(itertools.permutations(t))}
    return tuple(sorted(found, key=_key(theta)))


@lru_cache(maxsize=None)
def _dual_by_solving(t: Word, theta: Independence, connected: bool) -> Poly:
    """The element of the dual basis at t, from the unitriangular P-matrix."""
    cls = multidegree_class(t, theta)
    pos = {u: i for i, u in enumerate(cls)}
    m = [[Fraction(0)] * len(cls) for _ in cls]
    for i, v in enumerate(cls):
        for u, c in pc_pbw_P(v, theta, connected).items():
            m[i][pos[u]] = c
    # rows are P_v in the basis of traces; the dual family is the inverse transpose
    inv = inverse(m)
    j = pos[t]
    return Poly({u: inv[k][j] for u, k in pos.items()})


@lru_cache(maxsize=None)
def pc_dual_S(t: Word, theta: Independence, connected: bool = True, lyndon_rule: str = "solve") -> Poly:
    """Dual family of pc_pbw_P.

    Non-Lyndon traces use normalized shuffle powers of the Lyndon factors.  For
    a pc-Lyndon trace ``lyndon_rule`` selects "solve" (exact triangular solve)
    or "recursive" (first letter times S of the rest, the free-monoid rule,
    which is not dual for every independence relation).
    """
    t = normal_form(tuple(t), theta)
    if len(t) <= 1:
        return Poly.word(t)
    if is_pc_lyndon(t, theta, connected):
        if lyndon_rule == "solve":
            return _dual_by_solving(t, theta, connected)
        if lyndon_rule == "recursive":
            return trace_mul(Poly.word(t[:1]), pc_dual_S(t[1:], theta, connected, lyndon_rule), theta)
        raise ValueError(f"unknown lyndon_rule {lyndon_rule!r}")
    out = Poly.one()
    denom = 1
    for l, k in pc_lyndon_factorization(t, theta, connected):
        s = pc_dual_S(l, theta, connected, lyndon_rule)
        for j in range(1, k + 1):
            out = trace_shuffle(out, s, theta)
            denom *= j
    return out / denom


def check_pc_triangular(t: Word, theta: Independence, connected: bool = True) -> bool:
    """P_t = t + (terms on strictly greater traces)."""
    t = normal_form(tuple(t), theta)
    p = pc_pbw_P(t, theta, connected)
    key = order_key(t, theta)
    return p.coeff(t) == 1 and all(order_key(u, theta) > key for u in p if u != t)


def check_pc_duality(
    alphabet: Alphabet, theta: Independence, n: int, connected: bool = True, lyndon_rule: str = "solve"
) -> Report:
    size = len(alphabet)
    rep = Report(
        "trace-duality",
        {"alphabet": "".join(alphabet.letters), "theta": theta.format(alphabet), "max_len": n},
    )
    traces = all_traces(size, theta, n)
    for u in traces:
        s = pc_dual_S(u, theta, connected, lyndon_rule)
        for v in traces:
            p = pc_pbw_P(v, theta, connected)
            value = sum((c * p.coeff(w) for w, c in s.items()), Fraction(0))
            rep.checks_run += 1
            expected = int(u == v)
            if value != expected:
                rep.violation(
                    f"<S_{alphabet.format(u) or '1'}, P_{alphabet.format(v) or '1'}>",
                    expected,
                    format_rational(value),
                )
    return rep


def proposition_checks(l: Word, theta: Independence, connected: bool = True) -> list[str]:
    """Failed postconditions of the standard factorization of a pc-Lyndon trace."""
    l = normal_form(tuple(l), theta)
    f, n = pc_std_factorization(l, theta, connected)
    failed = []
    if not is_pc_lyndon(f, theta, connected):
        failed.append("f is not Lyndon")
    if not (trace_cmp(f, l, theta) < 0 < trace_cmp(n, l, theta)):
        failed.append("f < l < n fails")
    if normal_form(f + n, theta) != l:
        failed.append("f n != l")
    initial = {w[0] for w in swap_closure(l, theta)}
    f_initial = {w[0] for w in swap_closure(f, theta)}
    if len(initial) != 1 or f_initial != initial:
        failed.append("initial letter not unique or not shared with f")
    return failed


def trace_diagonal(size: int, theta: Independence, n: int) -> TensorPoly:
    return TensorPoly({(t, t): 1 for t in all_traces(size, theta, n)})


def trace_schuetzenberger_product(
    size: int,
    theta: Independence,
    n: int,
    connected: bool = True,
    order: str = "decreasing",
    lyndon_rule: str = "solve",
) -> TensorPoly:
    lyn = pc_lyndon_up_to(size, theta, n, connected)
    if order == "decreasing":
        lyn.reverse()
    elif order != "increasing":
        raise ValueError(f"unknown product order {order!r}")
    conc, sh = _laws(theta)
    factors = [
        truncated_exp(
            TensorPoly.outer(pc_dual_S(l, theta, connected, lyndon_rule), pc_pbw_P(l, theta, connected)),
            n,
            sh,
            conc,
        )
        for l in lyn
    ]
    return ordered_product(factors, n, sh, conc)


def verify_sf_trace(
    alphabet: Alphabet,
    theta: Independence,
    n: int,
    connected: bool = True,
    order: str = "decreasing",
    lyndon_rule: str = "solve",
) -> Report:
    """Diagonal trace series (expected) against the ordered product, truncated at n."""
    size = len(alphabet)
    _check_cap(n, size)
    rep = Report(
        "sf-trace",
        {
            "alphabet": "".join(alphabet.letters),
            "theta": theta.format(alphabet),
            "degree": n,
            "connected": connected,
            "order": order,
        },
    )
    lhs = trace_diagonal(size, theta, n)
    try:
        rhs = trace_schuetzenberger_product(size, theta, n, connected, order, lyndon_rule)
    except ValueError as exc:
        # without the connectedness filter factorizations stop being unique
        rep.violation("construction", "unique Lyndon factorizations", str(exc))
        rhs = TensorPoly()
    compare_tensors(lhs, rhs, rep, lambda w: alphabet.format(w) or "1")
    lyn_count = len(pc_lyndon_up_to(size, theta, n, connected))
    rep.extra.update(
        degree=n,
        lyndon_count=lyn_count,
        terms_lhs=len(lhs),
        terms_rhs=len(rhs),
        mismatches=rep.violations,
        theta=theta.format(alphabet),
        pc_lyndon_count=lyn_count,
    )
    rep.artifacts["lhs"], rep.artifacts["rhs"] = lhs, rhs
    return rep
