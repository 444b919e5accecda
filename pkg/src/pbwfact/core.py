"""Sparse exact arithmetic over words.

Words are plain tuples of letters. For a finite ordered alphabet the letters
are the positions ``0 .. k-1`` so that Python tuple comparison is exactly the
lexicographic order (a proper prefix is smaller than its extensions).  The
stuffle algebra reuses the same machinery with letters ``s >= 1`` standing for
``y_s``.

Coefficients are :class:`fractions.Fraction` everywhere.
"""
from __future__ import annotations

import itertools
import json
import math
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Hashable, Iterable, Iterator, Mapping, Sequence, Union

Word = tuple
Number = Union[int, Fraction]
# word-level bilinear law: (u, v) -> ((w, multiplicity), ...)
WordLaw = Callable[[tuple, tuple], Iterable[tuple[tuple, int]]]


class AlphabetMismatch(ValueError):
    pass


class Alphabet:
    """A finite totally ordered alphabet; the order is list position."""

    __slots__ = ("letters", "_index")

    def __init__(self, letters: Sequence[str] | str):
        letters = tuple(letters)
        if len(set(letters)) != len(letters):
            raise ValueError(f"duplicate letters in alphabet {letters!r}")
        if not letters:
            raise ValueError("alphabet must be nonempty")
        self.letters = letters
        self._index = {x: i for i, x in enumerate(letters)}

    def __len__(self) -> int:
        return len(self.letters)

    def __eq__(self, other) -> bool:
        return isinstance(other, Alphabet) and self.letters == other.letters

    def __hash__(self) -> int:
        return hash(self.letters)

    def __repr__(self) -> str:
        return f"Alphabet({''.join(self.letters)!r})"

    def index(self, letter: str) -> int:
        try:
            return self._index[letter]
        except KeyError:
            raise AlphabetMismatch(f"letter {letter!r} not in {self!r}") from None

    def word(self, s: str | Sequence[str]) -> Word:
        return tuple(self.index(x) for x in s)

    def format(self, w: Word) -> str:
        return "".join(self.letters[i] for i in w)

    def contains(self, w: Word) -> bool:
        return all(isinstance(i, int) and 0 <= i < len(self.letters) for i in w)

    def words(self, n: int) -> Iterator[Word]:
        """All words of length exactly ``n`` in lexicographic order."""
        return itertools.product(range(len(self.letters)), repeat=n)

    def words_up_to(self, n: int) -> list[Word]:
        return [w for k in range(n + 1) for w in self.words(k)]


def word_cmp(u: Word, v: Word, alphabet: Alphabet | None = None) -> int:
    """Three-way lexicographic comparison: -1, 0 or 1."""
    if alphabet is not None and not (alphabet.contains(u) and alphabet.contains(v)):
        raise AlphabetMismatch(f"{u!r} or {v!r} is not a word over {alphabet!r}")
    return (u > v) - (u < v)


# ---------------------------------------------------------------------------
# sparse vectors


class SparseVector:
    """Finitely supported map key -> Fraction with no stored zeros.

    Instances are treated as immutable; every operation returns a new object.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Hashable, Number] | Iterable[tuple[Hashable, Number]] = ()):
        acc: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for k, c in items:
            acc[k] = acc.get(k, 0) + c
        self._terms = {k: Fraction(c) for k, c in acc.items() if c != 0}

    def _with_terms(self, terms: dict, other: "SparseVector | None" = None):
        # terms must already be zero-free with Fraction values
        out = type(self).__new__(type(self))
        out._terms = terms
        out._copy_meta(self)
        return out

    def _copy_meta(self, source: "SparseVector") -> None:
        pass

    def _like(self, terms: Mapping) -> "SparseVector":
        out = type(self)(terms)
        out._copy_meta(self)
        return out

    @property
    def terms(self) -> Mapping:
        return self._terms

    def items(self):
        return self._terms.items()

    def keys(self):
        return self._terms.keys()

    def coeff(self, key) -> Fraction:
        return self._terms.get(key, Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, SparseVector):
            return type(self) is type(other) and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == self._like({self._unit_key(): other})
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def _unit_key(self):
        raise TypeError(f"{type(self).__name__} has no unit")

    def _check_compatible(self, other) -> None:
        if type(self) is not type(other):
            raise TypeError(f"cannot combine {type(self).__name__} and {type(other).__name__}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self._like({self._unit_key(): other})
        self._check_compatible(other)
        acc = dict(self._terms)
        for k, c in other._terms.items():
            s = acc.get(k, 0) + c
            if s:
                acc[k] = s
            else:
                acc.pop(k, None)
        return self._with_terms(acc, other)

    __radd__ = __add__

    def __neg__(self):
        return self._with_terms({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: Number):
        c = Fraction(c)
        if not c:
            return self._with_terms({})
        return self._with_terms({k: v * c for k, v in self._terms.items()})

    def __rmul__(self, c):
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    def __truediv__(self, c: Number):
        return self.scale(Fraction(1) / Fraction(c))

    def sorted_items(self, key=None) -> list:
        return sorted(self._terms.items(), key=key or (lambda kv: kv[0]))

    def __repr__(self) -> str:
        body = ", ".join(f"{k!r}: {format_rational(c)}" for k, c in self.sorted_items())
        return f"{type(self).__name__}({{{body}}})"


def _same_alphabet(a: Alphabet | None, b: Alphabet | None) -> Alphabet | None:
    if a is not None and b is not None and a != b:
        raise AlphabetMismatch(f"{a!r} != {b!r}")
    return a if a is not None else b


class Poly(SparseVector):
    """Element of the free algebra: finitely supported map word -> rational.

    ``p * q`` is the concatenation product.  ``alphabet`` is optional; when two
    polynomials both carry one they must agree.
    """

    __slots__ = ("alphabet",)

    def __init__(self, terms=(), alphabet: Alphabet | None = None):
        super().__init__(terms)
        self.alphabet = alphabet
        if alphabet is not None:
            for w in self._terms:
                if not alphabet.contains(w):
                    raise AlphabetMismatch(f"{w!r} is not a word over {alphabet!r}")

    def _copy_meta(self, source) -> None:
        self.alphabet = source.alphabet

    def _with_terms(self, terms, other=None):
        out = super()._with_terms(terms)
        if other is not None:
            out.alphabet = _same_alphabet(self.alphabet, other.alphabet)
        return out

    def _unit_key(self):
        return ()

    @classmethod
    def one(cls, alphabet: Alphabet | None = None) -> "Poly":
        return cls({(): 1}, alphabet)

    @classmethod
    def word(cls, w: Word, coeff: Number = 1, alphabet: Alphabet | None = None) -> "Poly":
        return cls({tuple(w): coeff}, alphabet)

    @classmethod
    def parse(cls, alphabet: Alphabet, spec: Mapping[str, Number]) -> "Poly":
        return cls({alphabet.word(s): c for s, c in spec.items()}, alphabet)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return conc_mul(self, other)

    def __pow__(self, k: int) -> "Poly":
        out = Poly.one(self.alphabet)
        for _ in range(k):
            out = out * self
        return out

    def degrees(self) -> set[int]:
        return {len(w) for w in self._terms}

    def constant(self) -> Fraction:
        """The counit: coefficient of the empty word."""
        return self.coeff(())


class TensorPoly(SparseVector):
    """Finitely supported map (left key, right key) -> rational."""

    __slots__ = ()

    def _unit_key(self):
        return ((), ())

    @classmethod
    def one(cls) -> "TensorPoly":
        return cls({((), ()): 1})

    @classmethod
    def outer(cls, p: SparseVector, q: SparseVector) -> "TensorPoly":
        return cls({(u, v): a * b for u, a in p.items() for v, b in q.items()})

    def truncate(self, n: int, degree: Callable[[tuple], int] = len) -> "TensorPoly":
        return TensorPoly({k: c for k, c in self._terms.items() if degree(k[1]) <= n})


# ---------------------------------------------------------------------------
# word-level laws


def conc_words(u: Word, v: Word) -> tuple[tuple[Word, int], ...]:
    return ((u + v, 1),)


@lru_cache(maxsize=None)
def shuffle_words(u: Word, v: Word) -> tuple[tuple[Word, int], ...]:
    """All interleavings of ``u`` and ``v`` with multiplicities."""
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    acc: dict[Word, int] = {}
    x, y = u[:1], v[:1]
    for w, c in shuffle_words(u[1:], v):
        acc[x + w] = acc.get(x + w, 0) + c
    for w, c in shuffle_words(u, v[1:]):
        acc[y + w] = acc.get(y + w, 0) + c
    return tuple(acc.items())


def _bilinear(p: SparseVector, q: SparseVector, law: WordLaw) -> dict:
    acc: dict = {}
    for u, a in p.items():
        for v, b in q.items():
            ab = a * b
            for w, m in law(u, v):
                acc[w] = acc.get(w, 0) + ab * m
    return {w: c for w, c in acc.items() if c}


def conc_mul(p: Poly, q: Poly) -> Poly:
    alphabet = _same_alphabet(p.alphabet, q.alphabet)
    return Poly(_bilinear(p, q, conc_words), alphabet)


def shuffle(p: Poly, q: Poly) -> Poly:
    alphabet = _same_alphabet(p.alphabet, q.alphabet)
    return Poly(_bilinear(p, q, shuffle_words), alphabet)


def shuffle_power(p: Poly, k: int) -> Poly:
    out = Poly.one(p.alphabet)
    for _ in range(k):
        out = shuffle(out, p)
    return out


@lru_cache(maxsize=None)
def deshuffle_word(w: Word) -> tuple[tuple[tuple[Word, Word], int], ...]:
    """Coproduct of a single word: sum over position subsets of w|S (x) w|S^c."""
    acc: dict = {}
    n = len(w)
    for mask in range(1 << n):
        left = tuple(w[i] for i in range(n) if mask >> i & 1)
        right = tuple(w[i] for i in range(n) if not mask >> i & 1)
        acc[(left, right)] = acc.get((left, right), 0) + 1
    return tuple(acc.items())


def coproduct(p: Poly) -> TensorPoly:
    """The letter-primitive coproduct, extended as an algebra morphism."""
    acc: dict = {}
    for w, c in p.items():
        for key, m in deshuffle_word(w):
            acc[key] = acc.get(key, 0) + c * m
    return TensorPoly(acc)


def antipode(p: Poly) -> Poly:
    return Poly({w[::-1]: (-1) ** len(w) * c for w, c in p.items()}, p.alphabet)


def counit(p: Poly) -> Fraction:
    return p.constant()


def pairing(p: SparseVector, q: SparseVector) -> Fraction:
    """Scalar product making the keys an orthonormal family."""
    if isinstance(p, Poly) and isinstance(q, Poly):
        _same_alphabet(p.alphabet, q.alphabet)
    if len(q) < len(p):
        p, q = q, p
    return sum((c * q.coeff(w) for w, c in p.items()), Fraction(0))


def tensor_pairing(s: TensorPoly, t: TensorPoly) -> Fraction:
    return pairing(s, t)


_LAWS: dict[str, WordLaw] = {"shuffle": shuffle_words, "conc": conc_words}


def _law(law: str | WordLaw) -> WordLaw:
    if callable(law):
        return law
    try:
        return _LAWS[law]
    except KeyError:
        raise ValueError(f"unknown product {law!r}") from None


def tensor_mul(
    s: TensorPoly,
    t: TensorPoly,
    left_product: str | WordLaw = "shuffle",
    right_product: str | WordLaw = "conc",
    max_degree: int | None = None,
    degree: Callable[[tuple], int] = len,
) -> TensorPoly:
    """Componentwise product on each tensor leg.

    Output terms whose right leg has ``degree`` above ``max_degree`` are
    dropped (``None`` keeps everything).
    """
    if max_degree is not None and max_degree < 0:
        raise ValueError("max_degree must be >= 0")
    left, right = _law(left_product), _law(right_product)
    acc: dict = {}
    for (a, b), c in s.items():
        db = degree(b)
        for (a2, b2), c2 in t.items():
            if max_degree is not None and db + degree(b2) > max_degree:
                continue
            cc = c * c2
            rights = right(b, b2)
            for u, m in left(a, a2):
                for v, m2 in rights:
                    if max_degree is not None and degree(v) > max_degree:
                        continue
                    acc[(u, v)] = acc.get((u, v), 0) + cc * m * m2
    return TensorPoly({k: c for k, c in acc.items() if c})


# ---------------------------------------------------------------------------
# multi-indices


class MultiIndex:
    """Finitely supported map index -> positive integer (an element of N^(I))."""

    __slots__ = ("_items", "_hash")

    def __init__(self, entries: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = entries.items() if isinstance(entries, Mapping) else entries
        acc: dict[int, int] = {}
        for i, k in items:
            if k < 0:
                raise ValueError(f"negative exponent {k} at index {i}")
            acc[i] = acc.get(i, 0) + k
        self._items = tuple(sorted((i, k) for i, k in acc.items() if k))
        self._hash = hash(self._items)

    @classmethod
    def unit(cls, i: int, k: int = 1) -> "MultiIndex":
        return cls({i: k})

    @classmethod
    def from_sequence(cls, indices: Iterable[int]) -> "MultiIndex":
        acc: dict[int, int] = {}
        for i in indices:
            acc[i] = acc.get(i, 0) + 1
        return cls(acc)

    def __getitem__(self, i: int) -> int:
        for j, k in self._items:
            if j == i:
                return k
        return 0

    def items(self) -> tuple[tuple[int, int], ...]:
        return self._items

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, _ in self._items)

    def __len__(self) -> int:
        return len(self._items)

    def __bool__(self) -> bool:
        return bool(self._items)

    def __eq__(self, other) -> bool:
        return isinstance(other, MultiIndex) and self._items == other._items

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "MultiIndex") -> bool:
        return (self.weight, self._items) < (other.weight, other._items)

    def __add__(self, other: "MultiIndex") -> "MultiIndex":
        return MultiIndex(self._items + other._items)

    def __sub__(self, other: "MultiIndex") -> "MultiIndex":
        if not other <= self:
            raise ValueError(f"{other} is not below {self}")
        return MultiIndex({i: k - other[i] for i, k in self._items})

    def __le__(self, other: "MultiIndex") -> bool:
        # componentwise order
        return all(other[i] >= k for i, k in self._items)

    @property
    def weight(self) -> int:
        return sum(k for _, k in self._items)

    def factorial(self) -> int:
        return math.prod(math.factorial(k) for _, k in self._items)

    def splits(self) -> Iterator[tuple["MultiIndex", "MultiIndex"]]:
        """All (a, b) with a + b == self."""
        idx = [i for i, _ in self._items]
        for ks in itertools.product(*(range(k + 1) for _, k in self._items)):
            a = MultiIndex(zip(idx, ks))
            yield a, self - a

    def sequence(self, descending: bool = True) -> tuple[int, ...]:
        """Indices with repetition, largest first by default."""
        items = reversed(self._items) if descending else self._items
        return tuple(i for i, k in items for _ in range(k))

    def __repr__(self) -> str:
        if not self._items:
            return "0"
        return "+".join(f"{k}e{i}" if k > 1 else f"e{i}" for i, k in self._items)


def multinomial(a: MultiIndex, b: MultiIndex) -> int:
    """(a+b)! / (a! b!)."""
    return (a + b).factorial() // (a.factorial() * b.factorial())


def multi_indices(dim: int, max_weight: int) -> list[MultiIndex]:
    """All multi-indices on ``range(dim)`` with weight <= max_weight, by weight."""
    out = []
    for w in range(max_weight + 1):
        for combo in itertools.combinations_with_replacement(range(dim), w):
            out.append(MultiIndex.from_sequence(combo))
    return out


# ---------------------------------------------------------------------------
# serialization


def format_rational(c: Number) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def parse_rational(s: str | int) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    s = s.strip()
    if "/" in s:
        p, q = s.split("/")
        if int(q) <= 0:
            raise ValueError(f"bad denominator in {s!r}")
        return Fraction(int(p), int(q))
    return Fraction(int(s))


def poly_to_json(p: Poly, fmt: Callable[[Word], str] | None = None) -> dict[str, str]:
    if fmt is None:
        if p.alphabet is None:
            raise ValueError("a word formatter is needed for polynomials without an alphabet")
        fmt = p.alphabet.format
    return {fmt(w): format_rational(c) for w, c in p.sorted_items()}


def poly_from_json(data: Mapping[str, str], alphabet: Alphabet) -> Poly:
    return Poly({alphabet.word(s): parse_rational(c) for s, c in data.items()}, alphabet)


def dumps_poly(p: Poly, fmt: Callable[[Word], str] | None = None) -> str:
    return json.dumps(poly_to_json(p, fmt))


def tensor_to_json(t: TensorPoly, fmt: Callable[[Word], str]) -> list[list[str]]:
    return [[fmt(u), fmt(v), format_rational(c)] for (u, v), c in t.sorted_items()]


def format_poly(p: SparseVector, fmt: Callable[[Hashable], str], key=None) -> str:
    """Human-readable sum such as ``ab - ba`` or ``1/2*aab``."""
    if not p:
        return "0"
    out = []
    for w, c in p.sorted_items(key):
        mono = fmt(w)
        mag = abs(c)
        if not mono:
            body = format_rational(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{format_rational(mag)}*{mono}"
        out.append(("-" if c < 0 else "+", body))
    head = ("-" if out[0][0] == "-" else "") + out[0][1]
    return " ".join([head] + [f"{s} {b}" for s, b in out[1:]])
