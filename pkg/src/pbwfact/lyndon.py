"""Lyndon words: recognition, generation, standard and Lyndon factorizations."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, NamedTuple

from .core import Alphabet, Word


class StandardFactorization(NamedTuple):
    left: Word
    right: Word


@dataclass(frozen=True)
class LyndonFactorization:
    """Nonincreasing Lyndon factorization grouped as (factor, multiplicity)."""

    factors: tuple[tuple[Word, int], ...]

    def __iter__(self):
        return iter(self.factors)

    def __len__(self) -> int:
        return len(self.factors)

    def flat(self) -> list[Word]:
        return [l for l, k in self.factors for _ in range(k)]

    def word(self) -> Word:
        return sum(self.flat(), ())


def is_lyndon(w: Word) -> bool:
    """Nonempty and strictly smaller than each of its proper right factors."""
    return bool(w) and all(w < w[i:] for i in range(1, len(w)))


def _size(alphabet: Alphabet | int) -> int:
    return alphabet if isinstance(alphabet, int) else len(alphabet)


def iter_lyndon(alphabet: Alphabet | int, n: int) -> Iterator[Word]:
    """Duval's generation of Lyndon words of length <= n, in increasing order."""
    k = _size(alphabet)
    if n <= 0 or k <= 0:
        return
    w = [0]
    while w:
        yield tuple(w)
        m = len(w)
        while len(w) < n:
            w.append(w[len(w) - m])
        while w and w[-1] == k - 1:
            w.pop()
        if w:
            w[-1] += 1


def lyndon_up_to(alphabet: Alphabet | int, n: int) -> list[Word]:
    return list(iter_lyndon(alphabet, n))


def std_factorization(l: Word) -> StandardFactorization:
    """Split ``l`` before its longest proper right factor that is Lyndon."""
    if len(l) < 2 or not is_lyndon(l):
        raise ValueError(f"standard factorization needs a Lyndon word of length >= 2, got {l!r}")
    for i in range(1, len(l)):
        if is_lyndon(l[i:]):
            return StandardFactorization(l[:i], l[i:])
    raise AssertionError("unreachable: the last letter is always Lyndon")


def lyndon_factorization(w: Word) -> LyndonFactorization:
    """Unique nonincreasing factorization into Lyndon words (Duval)."""
    w = tuple(w)
    n = len(w)
    flat: list[Word] = []
    i = 0
    while i < n:
        j, k = i + 1, i
        while j < n and w[k] <= w[j]:
            k = i if w[k] < w[j] else k + 1
            j += 1
        while i <= k:
            flat.append(w[i : i + j - k])
            i += j - k
    grouped: list[list] = []
    for l in flat:
        if grouped and grouped[-1][0] == l:
            grouped[-1][1] += 1
        else:
            grouped.append([l, 1])
    return LyndonFactorization(tuple((l, k) for l, k in grouped))
