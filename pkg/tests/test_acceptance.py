"""Acceptance criteria, one test per criterion.

Each test prints a single ``PASS``/``FAIL`` line.  Run directly with
``python3 tests/test_acceptance.py`` for the bare summary.
"""
from fractions import Fraction
from functools import cache

import pytest

from pbwfact.core import Alphabet, Poly
from pbwfact.enveloping import (
    builtin,
    perturbed_family,
    radford_to_pbw_experiment,
    verify_radford_multiplicativity,
    verify_theorem1,
    verify_theorem2,
)
from pbwfact.factorization import (
    commutative_diagonal,
    commutative_power_check,
    diagonal_series,
    swapped_orders,
    verify_sf,
)
from pbwfact.pbw import check_duality, check_triangular_all
from pbwfact.stuffle import check_primitive, check_stuffle_duality, log_star_identity, words_of_weight
from pbwfact.trace import Independence, pc_lyndon_up_to, proposition_checks, verify_sf_trace

AB, ABC = Alphabet("ab"), Alphabet("abc")


def _all(results):
    bad = [name for name, ok in results if not ok]
    return not bad, "ok" if not bad else "failing: " + ", ".join(bad)


def crit_1a():
    results = [(f"ab/{n}", verify_sf(AB, n).ok) for n in range(6)]
    results += [(f"abc/{n}", verify_sf(ABC, n).ok) for n in range(5)]
    return _all(results)


def crit_1b():
    # negative control: every adjacent transposition of the decreasing order
    # at degree 3 must be reported as a mismatch
    results = []
    for alphabet in (AB, ABC):
        for i, order in swapped_orders(alphabet, 3):
            rep = verify_sf(alphabet, 3, order)
            results.append((f"{''.join(alphabet.letters)} swap@{i}", not rep.ok))
    ok, detail = _all(results)
    detected = sum(r for _, r in results)
    return ok, f"{detected}/{len(results)} adjacent swaps detected; {detail}"


def crit_2():
    dual = check_duality(AB, 6)
    tri = check_triangular_all(AB, 6)
    return _all([(f"duality ({dual.checks_run} pairs)", dual.ok), ("triangularity", tri.ok)])


def crit_3():
    x = Alphabet("x")
    single = verify_sf(x, 6)
    full = verify_sf_trace(Alphabet("xy"), Independence.full(2), 6)
    results = [
        ("single letter", single.ok and single.artifacts["rhs"] == diagonal_series(x, 6)),
        ("two commuting letters", full.ok and full.artifacts["rhs"] == commutative_diagonal(2, 6)),
    ]
    results += [(f"power k={k}", commutative_power_check(k)) for k in range(9)]
    return _all(results)


def crit_4():
    h, t, q = Fraction(1, 2), Fraction(1, 3), Fraction(1, 4)
    y4 = Poly({(4,): 1, (1, 3): -h, (2, 2): -h, (3, 1): -h, (1, 1, 2): t, (1, 2, 1): t, (2, 1, 1): t, (1, 1, 1, 1): -q})
    results = [(f"count n={n}", len(words_of_weight(n)) == 2 ** (n - 1)) for n in range(1, 11)]
    results.append(("duality weight<=5", check_stuffle_duality(5).ok))
    results.append(("log_* y4", log_star_identity((4,)) == y4))
    results.append(
        ("log_* primitive", all(check_primitive(log_star_identity(w)) for n in range(1, 7) for w in words_of_weight(n)))
    )
    return _all(results)


def crit_5():
    ac = Independence.parse("a,c", ABC)
    results = [("abc, a~c, degree 3", verify_sf_trace(ABC, ac, 3).ok)]
    for alphabet, n in ((AB, 4), (ABC, 3)):
        tr = verify_sf_trace(alphabet, Independence(), n)
        fr = verify_sf(alphabet, n)
        same = tr.artifacts["lhs"] == fr.artifacts["lhs"] and tr.artifacts["rhs"] == fr.artifacts["rhs"]
        results.append((f"empty relation {''.join(alphabet.letters)}/{n}", same and tr.ok and fr.ok))
    full = verify_sf_trace(Alphabet("xy"), Independence.full(2), 6)
    results.append(("full relation", full.ok and full.artifacts["rhs"] == commutative_diagonal(2, 6)))
    props = [l for l in pc_lyndon_up_to(ABC, ac, 4) if len(l) >= 2]
    results.append((f"proposition ({len(props)} traces)", all(proposition_checks(l, ac) == [] for l in props)))
    return _all(results)


def crit_6():
    results = [
        (f"radford {name}", verify_radford_multiplicativity(builtin(name), 4).ok)
        for name in ("sl2", "heisenberg", "abelian1", "abelian2", "abelian3")
    ]
    for name in ("sl2", "heisenberg"):
        rep = verify_theorem1(builtin(name), 3)
        results.append((f"theorem1 {name}", rep.ok and rep.extra["tensor_equal"] and rep.extra["phi_identity"]))
    inc = verify_theorem1(builtin("sl2"), 2, "increasing")
    results.append(("increasing order fails on sl2", not inc.ok and not inc.extra["tensor_equal"]))
    return _all(results)


def crit_7():
    results = []
    for name in ("sl2", "heisenberg", "abelian2", "nonabelian2"):
        for n in (1, 2, 3):
            results.append((f"pbw family {name}/{n}", verify_theorem2(builtin(name), n).ok))
    rep = radford_to_pbw_experiment(perturbed_family(builtin("sl2"), 2))
    only_c = len(rep.violations) == 1 and rep.violations[0]["location"].startswith("(c)")
    results.append(("perturbed family", only_c and rep.extra["unequal"] == ["2e0"]))
    return _all(results)


CRITERIA = {
    "1a free factorization identity": crit_1a,
    "1b adjacent-swap negative control": crit_1b,
    "2 PBW/dual duality and triangularity": crit_2,
    "3 commutative specialization": crit_3,
    "4 stuffle suite": crit_4,
    "5 trace suite": crit_5,
    "6 enveloping suite": crit_6,
    "7 Radford-to-PBW experiment": crit_7,
}


@cache
def evaluate(name):
    return CRITERIA[name]()


def line(name):
    ok, detail = evaluate(name)
    return f"{'PASS' if ok else 'FAIL'}  criterion {name}: {detail}"


@pytest.mark.parametrize("name", list(CRITERIA))
def test_criterion(name, capsys):
    with capsys.disabled():
        print("\n" + line(name))
    assert evaluate(name)[0], line(name)


if __name__ == "__main__":
    for name in CRITERIA:
        print(line(name))
