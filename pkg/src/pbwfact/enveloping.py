"""Enveloping algebras U(g) of finite-dimensional Lie algebras given by structure constants.

PBW monomials are indexed by :class:`~pbwfact.core.MultiIndex`.  ``B^alpha``
materializes as the ordered product of generators with the *largest* index
leftmost, so normal ordering rewrites every ascent ``b_i b_j`` (i < j) as
``b_j b_i + [b_i, b_j]``.

Linear forms on U(g) are kept in the coordinates of the dual family ``S_alpha``
(``<S_alpha, B^beta> = delta``) and always have finite support.
"""
from __future__ import annotations

import itertools
import json
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Callable, Mapping, Sequence

from .core import MultiIndex, Number, SparseVector, format_poly, format_rational, multi_indices, multinomial, parse_rational
from .linalg import inverse, rank
from .report import Report


class LieAlgebraError(ValueError):
    pass


class AntisymmetryError(LieAlgebraError):
    pass


class JacobiError(LieAlgebraError):
    pass


class AlgebraMismatch(ValueError):
    pass


BUILTIN_CONFIGS = ("abelian1", "abelian2", "abelian3", "heisenberg", "sl2", "nonabelian2")


class LieAlgebra:
    """Lie algebra on the ordered basis b_0 < b_1 < ... < b_{dim-1}.

    ``constants[(i, j)]`` maps k to c_ij^k with [b_i, b_j] = sum_k c_ij^k b_k.
    Only nonzero brackets are stored; antisymmetry is completed on load.
    """

    def __init__(self, dim: int, names: Sequence[str], constants: Mapping[tuple[int, int], Mapping[int, Number]]):
        if dim < 1:
            raise LieAlgebraError("dimension must be positive")
        if len(names) != dim or len(set(names)) != dim:
            raise LieAlgebraError(f"need {dim} distinct basis names, got {list(names)}")
        self.dim = dim
        self.names = tuple(names)
        table: dict[tuple[int, int], dict[int, Fraction]] = {}
        for (i, j), coeffs in constants.items():
            for x in (i, j, *coeffs):
                self._check_index(x)
            clean = {k: Fraction(c) for k, c in coeffs.items() if c}
            if i == j and clean:
                raise AntisymmetryError(f"[b{i}, b{i}] must vanish, got {_fmt_vec(clean)}")
            if not clean:
                continue
            for key, vec in (((i, j), clean), ((j, i), {k: -c for k, c in clean.items()})):
                if key in table and table[key] != vec:
                    raise AntisymmetryError(
                        f"antisymmetry fails for ({key[0]}, {key[1]}): "
                        f"{_fmt_vec(table[key])} vs {_fmt_vec(vec)}"
                    )
                table[key] = vec
        self.constants = table
        self._key = (dim, self.names, tuple(sorted((k, tuple(sorted(v.items()))) for k, v in table.items())))
        self._check_jacobi()
        self._order_cache: dict[tuple[int, ...], dict[MultiIndex, Fraction]] = {}
        self._coproduct_cache: dict[tuple[str, MultiIndex], tuple] = {}

    def _check_index(self, i) -> None:
        if not isinstance(i, int) or not 0 <= i < self.dim:
            raise LieAlgebraError(f"basis index {i!r} out of range for dimension {self.dim}")

    def bracket(self, i: int, j: int) -> dict[int, Fraction]:
        return self.constants.get((i, j), {})

    def bracket_vec(self, x: Mapping[int, Fraction], y: Mapping[int, Fraction]) -> dict[int, Fraction]:
        acc: dict[int, Fraction] = {}
        for i, a in x.items():
            for j, b in y.items():
                for k, c in self.bracket(i, j).items():
                    acc[k] = acc.get(k, 0) + a * b * c
        return {k: c for k, c in acc.items() if c}

    def _check_jacobi(self) -> None:
        for i, j, k in itertools.combinations(range(self.dim), 3):
            total: dict[int, Fraction] = {}
            for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                for m, v in self.bracket_vec(self.bracket(a, b), {c: Fraction(1)}).items():
                    total[m] = total.get(m, 0) + v
            total = {m: v for m, v in total.items() if v}
            if total:
                raise JacobiError(
                    f"Jacobi identity fails for ({self.names[i]}, {self.names[j]}, {self.names[k]}): "
                    f"sum of cyclic brackets is {_fmt_vec(total)}"
                )

    @property
    def is_abelian(self) -> bool:
        return not self.constants

    def __eq__(self, other) -> bool:
        return isinstance(other, LieAlgebra) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"LieAlgebra({','.join(self.names)}; {len(self.constants) // 2} brackets)"

    def format_index(self, a: MultiIndex) -> str:
        if not a:
            return "1"
        parts = []
        for i in reversed(a.support):
            k = a[i]
            parts.append(self.names[i] if k == 1 else f"{self.names[i]}^{k}")
        return "".join(parts) if all(len(n) == 1 for n in self.names) else "*".join(parts)


def _fmt_vec(v: Mapping[int, Fraction]) -> str:
    return "{" + ", ".join(f"{k}: {format_rational(c)}" for k, c in sorted(v.items())) + "}"


# ---------------------------------------------------------------------------
# loading


def _resolve_index(x, names: Sequence[str]) -> int:
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        if x in names:
            return names.index(x)
        if x.lstrip("-").isdigit():
            return int(x)
    raise LieAlgebraError(f"cannot resolve basis element {x!r}")


def load_lie_algebra(config: Mapping | str | Path) -> LieAlgebra:
    """Build a validated :class:`LieAlgebra` from a dict, a JSON path or a builtin name."""
    if isinstance(config, (str, Path)):
        config = _read_config(config)
    if not isinstance(config, Mapping):
        raise LieAlgebraError("config must be a JSON object")
    try:
        dim = config["dim"]
    except KeyError:
        raise LieAlgebraError("config is missing 'dim'") from None
    if not isinstance(dim, int) or dim < 1:
        raise LieAlgebraError(f"'dim' must be a positive integer, got {dim!r}")
    names = list(config.get("names") or [f"b{i}" for i in range(dim)])
    constants: dict[tuple[int, int], dict[int, Fraction]] = {}
    for entry in config.get("brackets", []):
        try:
            i = _resolve_index(entry["i"], names)
            j = _resolve_index(entry["j"], names)
            coeffs = {_resolve_index(k, names): parse_rational(c) for k, c in entry["coeffs"].items()}
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            if isinstance(exc, LieAlgebraError):
                raise
            raise LieAlgebraError(f"malformed bracket entry {entry!r}: {exc}") from None
        if (i, j) in constants:
            raise LieAlgebraError(f"bracket ({i}, {j}) listed twice")
        constants[(i, j)] = coeffs
    return LieAlgebra(dim, names, constants)


def _read_config(source: str | Path) -> dict:
    name = str(source)
    if name in BUILTIN_CONFIGS:
        text = resources.files("pbwfact.configs").joinpath(f"{name}.json").read_text()
    else:
        path = Path(source)
        if not path.exists() and path.stem in BUILTIN_CONFIGS and not path.parent.parts:
            text = resources.files("pbwfact.configs").joinpath(f"{path.stem}.json").read_text()
        else:
            text = path.read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise LieAlgebraError(f"config is not valid JSON: {exc}") from None


def builtin(name: str) -> LieAlgebra:
    if name not in BUILTIN_CONFIGS:
        raise LieAlgebraError(f"no builtin algebra {name!r}; choose from {', '.join(BUILTIN_CONFIGS)}")
    return load_lie_algebra(name)


# ---------------------------------------------------------------------------
# elements of U(g)


class UElement(SparseVector):
    """Element of U(g) in PBW coordinates: MultiIndex -> rational."""

    __slots__ = ("algebra",)

    def __init__(self, algebra: LieAlgebra, terms=()):
        super().__init__(terms)
        self.algebra = algebra
        for a in self._terms:
            if not isinstance(a, MultiIndex) or any(not 0 <= i < algebra.dim for i in a.support):
                raise ValueError(f"{a!r} is not a multi-index for dimension {algebra.dim}")

    def _copy_meta(self, source) -> None:
        self.algebra = source.algebra

    def _like(self, terms):
        return UElement(self.algebra, terms)

    def _check_compatible(self, other) -> None:
        super()._check_compatible(other)
        if self.algebra != other.algebra:
            raise AlgebraMismatch("elements of different enveloping algebras")

    def _unit_key(self):
        return MultiIndex()

    @classmethod
    def one(cls, algebra: LieAlgebra) -> "UElement":
        return cls(algebra, {MultiIndex(): 1})

    @classmethod
    def basis(cls, algebra: LieAlgebra, alpha: MultiIndex, coeff: Number = 1) -> "UElement":
        return cls(algebra, {alpha: coeff})

    @classmethod
    def generator(cls, algebra: LieAlgebra, i: int) -> "UElement":
        return cls(algebra, {MultiIndex.unit(i): 1})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, UElement):
            return NotImplemented
        return u_mul(self, other)

    def __repr__(self) -> str:
        return f"UElement({format_u(self)})"


def format_u(u: UElement) -> str:
    g = u.algebra
    return format_poly(u, lambda a: g.format_index(a) if a else "")


def materialize(alpha: MultiIndex) -> tuple[int, ...]:
    """Generator word of B^alpha: largest index leftmost."""
    return alpha.sequence(descending=True)


def _is_ordered(word: Sequence[int]) -> bool:
    return all(word[k] >= word[k + 1] for k in range(len(word) - 1))


def _ascents(word: Sequence[int]) -> list[int]:
    return [k for k in range(len(word) - 1) if word[k] < word[k + 1]]


def _normal_order_cached(g: LieAlgebra, word: tuple[int, ...]) -> dict[MultiIndex, Fraction]:
    hit = g._order_cache.get(word)
    if hit is not None:
        return hit
    ascents = _ascents(word)
    if not ascents:
        out = {MultiIndex.from_sequence(word): Fraction(1)}
    else:
        k = ascents[0]
        out = {}
        # b_i b_j = b_j b_i + [b_i, b_j] for i < j
        swapped = word[:k] + (word[k + 1], word[k]) + word[k + 2 :]
        pieces = [(swapped, Fraction(1))]
        for m, c in g.bracket(word[k], word[k + 1]).items():
            pieces.append((word[:k] + (m,) + word[k + 2 :], c))
        for w, c in pieces:
            for a, d in _normal_order_cached(g, w).items():
                out[a] = out.get(a, 0) + c * d
        out = {a: c for a, c in out.items() if c}
    g._order_cache[word] = out
    return out


def normal_order(
    g: LieAlgebra, word: Sequence[int], pick: Callable[[list[int]], int] | None = None
) -> UElement:
    """Expand a product of generators in the PBW basis.

    ``pick`` chooses which ascent to rewrite next (it receives the list of
    ascent positions); the default rewrites the leftmost one and memoizes.
    """
    word = tuple(word)
    for i in word:
        if not isinstance(i, int) or not 0 <= i < g.dim:
            raise ValueError(f"generator index {i!r} out of range for dimension {g.dim}")
    if pick is None:
        return UElement(g, _normal_order_cached(g, word))
    acc: dict[MultiIndex, Fraction] = {}
    todo: list[tuple[tuple[int, ...], Fraction]] = [(word, Fraction(1))]
    while todo:
        w, c = todo.pop()
        ascents = _ascents(w)
        if not ascents:
            a = MultiIndex.from_sequence(w)
            acc[a] = acc.get(a, 0) + c
            continue
        k = pick(ascents)
        if k not in ascents:
            raise ValueError(f"pick returned {k}, not an ascent position")
        todo.append((w[:k] + (w[k + 1], w[k]) + w[k + 2 :], c))
        for m, d in g.bracket(w[k], w[k + 1]).items():
            todo.append((w[:k] + (m,) + w[k + 2 :], c * d))
    return UElement(g, acc)


def u_mul(u: UElement, v: UElement) -> UElement:
    if u.algebra != v.algebra:
        raise AlgebraMismatch("cannot multiply elements of different enveloping algebras")
    g = u.algebra
    acc: dict[MultiIndex, Fraction] = {}
    for a, c in u.items():
        wa = materialize(a)
        for b, d in v.items():
            for e, m in _normal_order_cached(g, wa + materialize(b)).items():
                acc[e] = acc.get(e, 0) + c * d * m
    return UElement(g, acc)


def u_power(u: UElement, k: int) -> UElement:
    out = UElement.one(u.algebra)
    for _ in range(k):
        out = u_mul(out, u)
    return out


def ordered_product(elements: Sequence[UElement], alpha: MultiIndex) -> UElement:
    """prod_i elements[i]^alpha_i with the largest index leftmost."""
    g = elements[0].algebra
    out = UElement.one(g)
    for i in reversed(range(len(elements))):
        if alpha[i]:
            out = u_mul(out, u_power(elements[i], alpha[i]))
    return out


# ---------------------------------------------------------------------------
# coproduct and linear forms

# U(g) (x) U(g) in PBW coordinates: (MultiIndex, MultiIndex) -> rational
UU = dict


def u_coproduct(u: UElement, method: str = "binomial") -> UU:
    """Delta(u) with Delta(B^g) = sum_{g1+g2=g} g!/(g1! g2!) B^g1 (x) B^g2.

    ``method="multiplicative"`` instead multiplies out Delta(b_i) = b_i (x) 1 +
    1 (x) b_i over the generator word of each monomial, using u_mul on both legs.
    """
    if method not in ("binomial", "multiplicative"):
        raise ValueError(f"unknown coproduct method {method!r}")
    g = u.algebra
    acc: dict = {}
    for gamma, c in u.items():
        key = (method, gamma)
        terms = g._coproduct_cache.get(key)
        if terms is None:
            if method == "binomial":
                terms = tuple((pair, multinomial(*pair)) for pair in gamma.splits())
            else:
                terms = tuple(_coproduct_multiplicative(g, gamma).items())
            g._coproduct_cache[key] = terms
        for pair, m in terms:
            acc[pair] = acc.get(pair, 0) + c * m
    return {k: c for k, c in acc.items() if c}


def _coproduct_multiplicative(g: LieAlgebra, gamma: MultiIndex) -> dict:
    zero = MultiIndex()
    cur: dict = {(zero, zero): Fraction(1)}
    for i in materialize(gamma):
        e = MultiIndex.unit(i)
        nxt: dict = {}
        for (a, b), c in cur.items():
            for x, y in ((e, zero), (zero, e)):
                lu = u_mul(UElement.basis(g, a), UElement.basis(g, x))
                ru = u_mul(UElement.basis(g, b), UElement.basis(g, y))
                for p, cp in lu.items():
                    for q, cq in ru.items():
                        nxt[(p, q)] = nxt.get((p, q), 0) + c * cp * cq
        cur = {k: v for k, v in nxt.items() if v}
    return cur


def is_primitive(u: UElement) -> bool:
    zero = MultiIndex()
    if u.coeff(zero):
        return False
    expected: dict = {}
    for a, c in u.items():
        expected[(a, zero)] = expected.get((a, zero), 0) + c
        expected[(zero, a)] = expected.get((zero, a), 0) + c
    return u_coproduct(u) == {k: v for k, v in expected.items() if v}


class DualForm(SparseVector):
    """Finite-support linear form sum_alpha c_alpha S_alpha on U(g)."""

    __slots__ = ()

    @classmethod
    def S(cls, alpha: MultiIndex, coeff: Number = 1) -> "DualForm":
        return cls({alpha: coeff})

    def _unit_key(self):
        return MultiIndex()

    def __call__(self, u: UElement) -> Fraction:
        return sum((c * u.coeff(a) for a, c in self.items()), Fraction(0))

    def __repr__(self) -> str:
        body = " + ".join(f"{format_rational(c)}*S[{a!r}]" for a, c in self.sorted_items())
        return f"DualForm({body or '0'})"


def dual_eval(alpha: MultiIndex, u: UElement) -> Fraction:
    """<S_alpha, u>: the coefficient of B^alpha in u."""
    return u.coeff(alpha)


def convolution(f: DualForm, h: DualForm, u: UElement, method: str = "binomial") -> Fraction:
    """(f (x) h)(Delta(u))."""
    total = Fraction(0)
    for (a, b), c in u_coproduct(u, method).items():
        fa = f.coeff(a)
        if fa:
            total += c * fa * h.coeff(b)
    return total


def convolve_forms(
    g: LieAlgebra, f: DualForm, h: DualForm, n: int, method: str = "binomial"
) -> DualForm:
    """f * h restricted to B^gamma with |gamma| <= n, found by evaluation."""
    out = {}
    for gamma in multi_indices(g.dim, n):
        v = convolution(f, h, UElement.basis(g, gamma), method)
        if v:
            out[gamma] = v
    return DualForm(out)


# ---------------------------------------------------------------------------
# tensors S_alpha (x) B^beta


class UTensor(SparseVector):
    """sum c S_alpha (x) B^beta, keyed by (alpha, beta)."""

    __slots__ = ()

    def _unit_key(self):
        return (MultiIndex(), MultiIndex())

    @classmethod
    def one(cls) -> "UTensor":
        return cls({(MultiIndex(), MultiIndex()): 1})

    def left_weight(self) -> int:
        return max((a.weight for a, _ in self), default=0)


class _TensorAlgebra:
    """Products of UTensors truncated at left weight n.

    Left legs multiply by convolution evaluated on every B^eps with |eps| <= n;
    right legs by u_mul.  Convolutions of basis forms are cached per instance.
    """

    def __init__(self, g: LieAlgebra, n: int):
        self.g, self.n = g, n
        self._conv: dict[tuple[MultiIndex, MultiIndex], dict[MultiIndex, Fraction]] = {}
        self._right: dict[tuple[MultiIndex, MultiIndex], UElement] = {}

    def conv(self, a: MultiIndex, b: MultiIndex) -> dict[MultiIndex, Fraction]:
        key = (a, b)
        if key not in self._conv:
            self._conv[key] = dict(convolve_forms(self.g, DualForm.S(a), DualForm.S(b), self.n).items())
        return self._conv[key]

    def right(self, a: MultiIndex, b: MultiIndex) -> UElement:
        key = (a, b)
        if key not in self._right:
            self._right[key] = u_mul(UElement.basis(self.g, a), UElement.basis(self.g, b))
        return self._right[key]

    def mul(self, s: UTensor, t: UTensor) -> UTensor:
        acc: dict = {}
        for (a1, b1), c1 in s.items():
            for (a2, b2), c2 in t.items():
                if a1.weight + a2.weight > self.n:
                    continue
                left = self.conv(a1, a2)
                if not left:
                    continue
                right = self.right(b1, b2)
                for e, x in left.items():
                    for f, y in right.items():
                        acc[(e, f)] = acc.get((e, f), 0) + c1 * c2 * x * y
        return UTensor(acc)

    def exp(self, t: UTensor) -> UTensor:
        if any(a.weight < 1 for a, _ in t):
            raise ValueError("exp needs a tensor without left-weight-zero terms")
        out = power = UTensor.one()
        for k in range(1, self.n + 1):
            power = self.mul(power, t) / k
            if not power:
                break
            out = out + power
        return out


def diagonal_tensor(g: LieAlgebra, n: int) -> UTensor:
    return UTensor({(a, a): 1 for a in multi_indices(g.dim, n)})


def generator_exponential_product(g: LieAlgebra, n: int, order: str = "decreasing") -> UTensor:
    """prod_i exp(S_{e_i} (x) B^{e_i}), truncated at left weight n."""
    if order == "decreasing":
        idx = list(reversed(range(g.dim)))
    elif order == "increasing":
        idx = list(range(g.dim))
    else:
        raise ValueError(f"unknown product order {order!r}")
    alg = _TensorAlgebra(g, n)
    out = UTensor.one()
    for i in idx:
        e = MultiIndex.unit(i)
        out = alg.mul(out, alg.exp(UTensor({(e, e): 1})))
    return out


def phi(t: UTensor, g: LieAlgebra, beta: MultiIndex) -> UElement:
    """Apply the endomorphism u -> sum c <S_alpha, u> B^gamma of t to B^beta."""
    return UElement(g, [(b, c) for (a, b), c in t.items() if a == beta])


# ---------------------------------------------------------------------------
# verification suites


def _params(g: LieAlgebra, n: int, **kw) -> dict:
    return {"algebra": ",".join(g.names), "dim": g.dim, "degree": n, **kw}


def verify_radford_multiplicativity(
    g: LieAlgebra, n: int, map_fn: Callable = map, method: str = "multiplicative"
) -> Report:
    """S_alpha * S_beta = (alpha+beta)!/(alpha! beta!) S_{alpha+beta} on every B^gamma, |gamma| <= n.

    The coproduct is multiplied out from primitive generators by default,
    which makes the check independent of the closed binomial formula; the
    closed formula is compared against it as well.
    """
    rep = Report("radford", _params(g, n, coproduct=method))
    gammas = multi_indices(g.dim, n)
    for gamma in gammas:
        rep.checks_run += 1
        b = UElement.basis(g, gamma)
        if u_coproduct(b, "binomial") != u_coproduct(b, "multiplicative"):
            rep.violation(f"Delta(B[{g.format_index(gamma)}])", "binomial formula", "differs")
    pairs = [(a, b) for a in gammas for b in gammas if a.weight + b.weight <= n]

    def check(pair):
        a, b = pair
        bad = []
        fa, fb = DualForm.S(a), DualForm.S(b)
        for gamma in gammas:
            lhs = convolution(fa, fb, UElement.basis(g, gamma), method)
            rhs = multinomial(a, b) if gamma == a + b else 0
            if lhs != rhs:
                bad.append((gamma, rhs, lhs))
        return pair, len(gammas), bad

    for (a, b), count, bad in map_fn(check, pairs):
        rep.checks_run += count
        for gamma, rhs, lhs in bad:
            rep.violation(
                f"(S[{g.format_index(a)}]*S[{g.format_index(b)}])(B[{g.format_index(gamma)}])",
                format_rational(rhs),
                format_rational(lhs),
            )
    rep.extra["pairs_checked"] = len(pairs)
    return rep


def verify_theorem1(g: LieAlgebra, n: int, order: str = "decreasing", map_fn: Callable = map) -> Report:
    """sum S_alpha (x) B^alpha against the ordered product of generator exponentials.

    Both tensors are compared coordinate by coordinate, and each is applied as
    an endomorphism to every B^beta, |beta| <= n, which must give back B^beta.
    """
    rep = Report("theorem1", _params(g, n, order=order))
    lhs = diagonal_tensor(g, n)
    rhs = generator_exponential_product(g, n, order)
    fmt = g.format_index
    keys = sorted(set(lhs.keys()) | set(rhs.keys()), key=lambda k: (k[0], k[1]))
    rep.checks_run += len(keys)
    for key in keys:
        a, b = lhs.coeff(key), rhs.coeff(key)
        if a != b:
            rep.violation(f"S[{fmt(key[0])}](x)B[{fmt(key[1])}]", format_rational(a), format_rational(b))
    betas = multi_indices(g.dim, n)

    def resolve(beta):
        e = UElement.basis(g, beta)
        return beta, phi(lhs, g, beta) == e, phi(rhs, g, beta) == e

    phi_lhs = phi_rhs = True
    for beta, ok_l, ok_r in map_fn(resolve, betas):
        rep.checks_run += 2
        phi_lhs &= ok_l
        phi_rhs &= ok_r
        if not ok_r:
            rep.violation(f"Phi(product)(B[{fmt(beta)}])", format_u(UElement.basis(g, beta)), format_u(phi(rhs, g, beta)))
        if not ok_l:
            rep.violation(f"Phi(diagonal)(B[{fmt(beta)}])", format_u(UElement.basis(g, beta)), format_u(phi(lhs, g, beta)))
    tensor_equal = lhs == rhs
    rep.extra.update(
        tensor_equal=tensor_equal,
        phi_identity=phi_lhs and phi_rhs,
        views_agree=tensor_equal == (phi_lhs and phi_rhs),
        terms_lhs=len(lhs),
        terms_rhs=len(rhs),
    )
    rep.artifacts["lhs"], rep.artifacts["rhs"] = lhs, rhs
    return rep


# ---------------------------------------------------------------------------
# Radford families and the PBW experiment


class FamilyValidationError(ValueError):
    pass


class RadfordFamily:
    """A basis B^[alpha] of U(g) (up to weight n) with forms T_alpha.

    The forms are expected to satisfy <T_alpha / alpha!, B^[beta]> = delta and
    T_alpha * T_beta = T_{alpha+beta} on the truncation.
    """

    def __init__(self, g: LieAlgebra, n: int, basis: Mapping[MultiIndex, UElement], forms: Mapping[MultiIndex, DualForm], name: str = "custom"):
        self.g, self.n, self.name = g, n, name
        self.indices = multi_indices(g.dim, n)
        missing = [a for a in self.indices if a not in basis or a not in forms]
        if missing:
            raise FamilyValidationError(f"family lacks entries for {missing[:5]}")
        self.basis = dict(basis)
        self.forms = dict(forms)

    def validate(self) -> Report:
        rep = Report("family-validation", _params(self.g, self.n, family=self.name))
        for a in self.indices:
            t = self.forms[a] / a.factorial()
            for b in self.indices:
                rep.checks_run += 1
                v = t(self.basis[b])
                if v != (a == b):
                    rep.violation(f"<T[{a!r}]/{a!r}!, B[{b!r}]>", int(a == b), format_rational(v))
        for a in self.indices:
            for b in self.indices:
                if a.weight + b.weight > self.n:
                    continue
                target = self.forms[a + b]
                for gamma in self.indices:
                    rep.checks_run += 1
                    lhs = _convolve_general(self.forms[a], self.forms[b], UElement.basis(self.g, gamma))
                    if lhs != target.coeff(gamma):
                        rep.violation(
                            f"(T[{a!r}]*T[{b!r}])(B[{self.g.format_index(gamma)}])",
                            format_rational(target.coeff(gamma)),
                            format_rational(lhs),
                        )
        return rep


def _convolve_general(f: DualForm, h: DualForm, u: UElement) -> Fraction:
    return convolution(f, h, u, "binomial")


def pbw_family(g: LieAlgebra, n: int) -> RadfordFamily:
    """B^[alpha] = B^alpha and T_alpha = alpha! S_alpha."""
    idx = multi_indices(g.dim, n)
    return RadfordFamily(
        g,
        n,
        {a: UElement.basis(g, a) for a in idx},
        {a: DualForm.S(a, a.factorial()) for a in idx},
        name="pbw",
    )


def perturbed_family(
    g: LieAlgebra, n: int, target: MultiIndex | None = None, extra: MultiIndex | None = None
) -> RadfordFamily:
    """PBW family with B^[target] := B^target + B^extra and duals re-solved.

    Defaults: target = 2e_0, extra = e_1 (or e_0 in dimension one).
    """
    if target is None:
        target = MultiIndex.unit(0, 2)
    if extra is None:
        extra = MultiIndex.unit(1 if g.dim > 1 else 0)
    idx = multi_indices(g.dim, n)
    if target not in idx or extra not in idx or extra == target:
        raise ValueError(f"cannot perturb {target!r} by {extra!r} at degree {n}")
    basis = {a: UElement.basis(g, a) for a in idx}
    basis[target] = basis[target] + UElement.basis(g, extra)
    pos = {a: k for k, a in enumerate(idx)}
    m = [[Fraction(0)] * len(idx) for _ in idx]
    for a in idx:
        for b, c in basis[a].items():
            m[pos[a]][pos[b]] = c
    # row a of M holds B^[a]; the dual forms are the columns of M^{-1}
    inv = inverse(m)
    forms = {}
    for a in idx:
        col = {b: inv[pos[b]][pos[a]] for b in idx}
        forms[a] = DualForm({b: c * a.factorial() for b, c in col.items()})
    return RadfordFamily(g, n, basis, forms, name=f"perturbed({target!r}+={extra!r})")


def radford_to_pbw_experiment(family: RadfordFamily) -> Report:
    """Validate the family, then run checks (a) primitivity, (b) rank, (c) ordered products."""
    g, n = family.g, family.n
    validation = family.validate()
    if not validation.ok:
        first = validation.violations[0]
        raise FamilyValidationError(
            f"family {family.name!r} fails validation at {first['location']}: "
            f"expected {first['expected']}, got {first['actual']} "
            f"({len(validation.violations)} violations)"
        )
    rep = Report("theorem2", _params(g, n, family=family.name))
    rep.checks_run += validation.checks_run
    gens = [family.basis[MultiIndex.unit(i)] for i in range(g.dim)]
    primitive = []
    for i, b in enumerate(gens):
        rep.checks_run += 1
        ok = is_primitive(b)
        primitive.append(ok)
        if not ok:
            rep.violation(f"(a) B[e{i}] primitive", "primitive", format_u(b))
    cols = sorted({a for b in gens for a in b.keys()})
    r = rank([[b.coeff(a) for a in cols] for b in gens])
    rep.checks_run += 1
    if r != g.dim:
        rep.violation("(b) rank of B[e_i]", g.dim, r)
    unequal = []
    per_alpha = {}
    for a in family.indices:
        rep.checks_run += 1
        prod = ordered_product(gens, a)
        equal = prod == family.basis[a]
        per_alpha[repr(a)] = "equal" if equal else "unequal"
        if not equal:
            unequal.append(repr(a))
            rep.violation(f"(c) ordered product at {a!r}", format_u(family.basis[a]), format_u(prod))
    rep.extra.update(
        primitive=all(primitive),
        rank=r,
        unequal=unequal,
        comparisons=per_alpha,
    )
    return rep


def verify_theorem2(g: LieAlgebra, n: int, family: str = "pbw") -> Report:
    if family == "pbw":
        fam = pbw_family(g, n)
    elif family == "perturbed":
        fam = perturbed_family(g, n)
    else:
        raise ValueError(f"unknown family {family!r}")
    return radford_to_pbw_experiment(fam)
