import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from gaptuples.forms import (
    FormTuple,
    LinearForm,
    OrderError,
    check_prime_values,
    diam,
    dist,
    evaluate,
    is_admissible,
    max_diameter,
    nu_p,
    singular_series,
)

SIX = FormTuple.of("24m+5", "90m+19", "288m+61", "33m+7", "80m+17", "108m+23")


def brute_dist(L1, L2, cmax=200):
    """Least r > 0 with c2*L2 - c1*L1 = r for c1, c2 <= cmax, by direct search."""
    best = None
    for c1 in range(1, cmax + 1):
        for c2 in range(1, cmax + 1):
            if c2 * L2.a == c1 * L1.a:
                r = c2 * L2.b - c1 * L1.b
                if r > 0 and (best is None or r < best):
                    best = r
    return best


def brute_diam(L1, L2, L3, cmax=200):
    """Least r12 + r23 over triangle relations, with all coefficients <= cmax."""
    best = None
    for c1 in range(1, cmax + 1):
        top = c1 * L1.a
        if top % L2.a or top % L3.a:
            continue
        c2, c3 = top // L2.a, top // L3.a
        if c2 > cmax or c3 > cmax:
            continue
        r12, r23 = c2 * L2.b - c1 * L1.b, c3 * L3.b - c2 * L2.b
        if r12 > 0 and r23 > 0 and (best is None or r12 + r23 < best):
            best = r12 + r23
    return best


@st.composite
def reduced_forms(draw, amax=10, bmax=30):
    a = draw(st.integers(1, amax))
    b = draw(st.integers(-bmax, bmax).filter(lambda b: math.gcd(a, b) == 1))
    return LinearForm(a, b)


@st.composite
def sorted_tuples(draw, kmin=3, kmax=8, amax=500, bmax=500):
    k = draw(st.integers(kmin, kmax))
    pairs = st.tuples(st.integers(1, amax), st.integers(-bmax, bmax)).filter(lambda ab: math.gcd(*ab) == 1)
    out = draw(st.sets(pairs, min_size=k, max_size=k))
    return FormTuple(sorted(LinearForm(a, b) for a, b in out))


def test_linear_form_validation():
    with pytest.raises(ValueError):
        LinearForm(0, 1)
    with pytest.raises(ValueError):
        LinearForm(4, 6)
    assert LinearForm(1, -3).b == -3


def test_parse_and_render():
    assert LinearForm.parse("6m+5") == LinearForm(6, 5)
    assert LinearForm.parse("m") == LinearForm(1, 0)
    assert LinearForm.parse("m-3") == LinearForm(1, -3)
    assert LinearForm.parse("4849845m+2") == LinearForm(4849845, 2)
    for f in (LinearForm(6, 5), LinearForm(1, 0), LinearForm(1, -3), LinearForm(7, -2)):
        assert LinearForm.parse(str(f)) == f


def test_json_uses_decimal_strings():
    t = FormTuple.of("7793412365933766111540m+5135755941729704866499", "m")
    doc = t.to_json()
    assert doc["forms"][0] == {"a": "7793412365933766111540", "b": "5135755941729704866499"}
    assert FormTuple.from_json(doc) == t


def test_evaluate_examples():
    assert evaluate(LinearForm(2, 1), 0) == 1
    assert evaluate(LinearForm(6, 5), 5) == 35
    assert evaluate(LinearForm(60, 1), 5) == 301


def test_nu_p_examples():
    assert nu_p(FormTuple.shifts([0, 2, 10]), 3) == 3
    assert nu_p(FormTuple.shifts([0]), 5) == 1
    assert nu_p(FormTuple.shifts([0, 2, 6, 8, 12]), 5) == 4


def test_nu_p_matches_residue_scan():
    t = FormTuple.of("2m+1", "3m+2", "6m+5", "6m+7", "3m+4", "35m+2")
    for p in (2, 3, 5, 7, 11, 13):
        scan = sum(1 for m in range(p) if math.prod(f(m) for f in t) % p == 0)
        assert nu_p(t, p) == scan


def test_admissibility_examples():
    assert is_admissible(FormTuple.shifts([0, 2, 6, 8, 12]))
    assert is_admissible(FormTuple.shifts([0, 2, 6, 8, 12, 18, 20, 26, 30, 32]))
    res = is_admissible(FormTuple.shifts([0, 2, 10]))
    assert not res and res.witness == 3
    res = is_admissible(FormTuple.shifts(range(1, 11)))
    assert not res and res.witness == 2


def test_dist_examples():
    assert dist(LinearForm(2, 1), LinearForm(3, 2)) == 1
    assert dist(LinearForm(1, 0), LinearForm(1, 1)) == 1
    assert dist(LinearForm(24, 5), LinearForm(90, 19)) == 1


def test_order_error_names_orientation():
    with pytest.raises(OrderError, match="24m\\+5 \\|-> 90m\\+19"):
        dist(LinearForm(90, 19), LinearForm(24, 5))
    with pytest.raises(OrderError):
        diam(LinearForm(1, 0), LinearForm(1, 2), LinearForm(1, 1))


def test_diam_examples():
    assert diam(LinearForm(70, 1), LinearForm(105, 2), LinearForm(42, 1)) == 2
    assert diam(LinearForm(1, 0), LinearForm(1, 1), LinearForm(1, 2)) == 2


def test_six_tuple_distances_and_diameter():
    ordered = SIX.sorted()
    for x, y in itertools.combinations(ordered, 2):
        assert dist(x, y) == 1
    triples = list(itertools.combinations(ordered, 3))
    assert len(triples) == 20
    assert max(diam(*t) for t in triples) == 20 == max_diameter(ordered)


def test_max_diameter_examples():
    assert max_diameter(FormTuple.shifts([0, 1, 2])) == 2
    assert max_diameter(FormTuple.of("2m+1", "3m+2", "6m+5", "6m+7", "3m+4")) == 5
    with pytest.raises(ValueError):
        max_diameter(FormTuple.shifts([0, 1]))
    with pytest.raises(OrderError):
        max_diameter(FormTuple.shifts([0, 2, 1]))


def test_singular_series_examples():
    for trunc in (2, 100, 10**4):
        est = singular_series(FormTuple.shifts([0]), trunc)
        assert est.value == 1.0 and not est.is_zero_exact
    twins = FormTuple.shifts([0, 2])
    a, b = singular_series(twins, 10**5).value, singular_series(twins, 10**6).value
    assert round(a, 4) == round(b, 4) == 1.3203
    zero = singular_series(FormTuple.shifts([0, 2, 10]), 100)
    assert zero.value == 0 and zero.is_zero_exact
    with pytest.raises(ValueError):
        singular_series(FormTuple.shifts([0, 2, 6]), 2)


def test_check_prime_values():
    t = FormTuple.shifts([0, 2, 6])
    assert check_prime_values(t, 5) and not check_prime_values(t, 7)


# property tests


@settings(max_examples=300, deadline=None)
@given(reduced_forms(), reduced_forms())
def test_order_trichotomy(L1, L2):
    outcomes = [L1 < L2, L2 < L1, L1 == L2]
    assert sum(outcomes) == 1
    assert (L1 < L2) == (Fraction(L1.b, L1.a) < Fraction(L2.b, L2.a))


def test_equal_ratio_distinct_reduced_forms_impossible():
    # b/a in lowest terms determines a reduced form, so distinct reduced forms are comparable
    for a1, b1, a2, b2 in itertools.product(range(1, 8), range(-6, 7), range(1, 8), range(-6, 7)):
        if math.gcd(a1, b1) == 1 and math.gcd(a2, b2) == 1 and (a1, b1) != (a2, b2):
            assert Fraction(b1, a1) != Fraction(b2, a2)


@settings(max_examples=300, deadline=None)
@given(reduced_forms(), reduced_forms(), reduced_forms())
def test_dist_diam_match_bruteforce(L1, L2, L3):
    ordered = sorted({L1, L2, L3})
    assume(len(ordered) == 3)
    x, y, z = ordered
    assert dist(x, y) == brute_dist(x, y)
    assert diam(x, y, z) == brute_diam(x, y, z)


@settings(max_examples=300, deadline=None)
@given(sorted_tuples(3, 3, amax=50, bmax=50))
def test_diam_dominates_dist(t):
    x, y, z = t
    D = diam(x, y, z)
    assert D >= max(dist(x, y), dist(y, z)) and D >= dist(x, z)


@settings(max_examples=300, deadline=None)
@given(sorted_tuples())
def test_diameter_lower_bound(t):
    assert max_diameter(t) >= t.k - 1


@settings(max_examples=200, deadline=None)
@given(sorted_tuples(1, 8, amax=60, bmax=60), st.integers(-1000, 1000))
def test_admissibility_translation_invariant(t, shift):
    assert bool(is_admissible(t)) == bool(is_admissible(t.translate(shift)))
    assert is_admissible(t).witness == is_admissible(t.translate(shift)).witness


@settings(max_examples=100, deadline=None)
@given(sorted_tuples(1, 6, amax=30, bmax=30))
def test_admissible_means_no_covering_prime(t):
    # direct definition: some m avoids p | prod L_i(m) for every p <= k (checking p up to 3k is plenty)
    direct = all(
        any(math.prod(f(m) for f in t) % p for m in range(p))
        for p in (2, 3, 5, 7, 11, 13, 17, 19, 23)
    )
    assert bool(is_admissible(t)) == direct
