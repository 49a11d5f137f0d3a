from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gaptuples.poly import BiPoly, Poly, antiderivative, compose_affine, poly_add, poly_in_one_minus_x_minus_y, poly_mul

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=30)
polys = st.lists(rationals, max_size=6).map(Poly)


def test_trimming_and_degree():
    assert Poly([1, 2, 0, 0]).coeffs == (F(1), F(2))
    assert Poly([]).degree == -1 and Poly([0, 0]).is_zero()
    assert Poly.monomial(3).degree == 3


def test_antiderivative_examples():
    assert antiderivative(Poly([1])) == Poly([0, 1])
    P = Poly([F(3, 20), F(3, 5), 10])
    assert antiderivative(P) == Poly([0, F(3, 20), F(3, 10), F(10, 3)])
    assert antiderivative(P).derivative() == P


def test_compose_affine_example():
    assert compose_affine(Poly([0, 0, 1]), 1, -1) == Poly([1, -2, 1])


def test_integrate_and_division():
    assert Poly.monomial(9).integrate(0, 1) == F(1, 10)
    q, r = Poly([-6, 11, -6, 1]).divmod_linear(1)  # (x-1)(x-2)(x-3)
    assert r == 0 and q == Poly([6, -5, 1])
    with pytest.raises(ArithmeticError):
        Poly([1, 1]).shift_down()


def test_json_roundtrip():
    P = Poly([F(3, 4), 6, 10])
    assert P.to_json() == ["3/4", "6", "10"]
    assert Poly.from_json(P.to_json()) == P


def test_bipoly_substitution():
    P = Poly([1, 2, 3])
    B = poly_in_one_minus_x_minus_y(P)
    for x, y in ((F(1, 3), F(1, 5)), (F(-2), F(7, 2))):
        value = sum(c * x**i * y**j for (i, j), c in B.terms.items())
        assert value == P(1 - x - y)


def test_bipoly_inner_integral():
    # x^2 y over x in [0, 1-y] is y (1-y)^3 / 3
    inner = BiPoly({(2, 1): F(1)}).integrate_x_zero_to_one_minus_y()
    assert inner == Poly([0, F(1, 3), -1, 1, F(-1, 3)])


@settings(max_examples=200, deadline=None)
@given(polys, polys, rationals)
def test_ring_laws_and_evaluation(P, Q, x):
    assert (P + Q)(x) == P(x) + Q(x)
    assert (P * Q)(x) == P(x) * Q(x)
    assert poly_mul(P, Q) == P * Q and poly_add(P, Q) == P + Q
    assert (P - P).is_zero()


@settings(max_examples=200, deadline=None)
@given(polys, rationals, rationals)
def test_calculus_identities(P, a, b):
    A = antiderivative(P)
    assert A(0) == 0 and A.derivative() == P
    assert P.integrate(a, b) == A(b) - A(a)
    assert compose_affine(P, a, b)(F(1, 7)) == P(a + b * F(1, 7))
    q, r = P.divmod_linear(a)
    assert q * Poly([-a, 1]) + Poly.const(r) == P
