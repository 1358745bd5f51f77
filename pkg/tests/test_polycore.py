from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from x1jacobi.polycore import NEG_INF, Polynomial, add, differentiate, evaluate, mul

fractions = st.fractions(min_value=-50, max_value=50, max_denominator=20)
polys = st.lists(fractions, min_size=0, max_size=8).map(Polynomial)


def test_add_examples():
    one_plus_x = Polynomial((1, 1))
    assert add(one_plus_x, Polynomial((-1, -1))).is_zero
    assert add(Polynomial((0, 1)), Polynomial((0, 0, 1))) == Polynomial((0, 1, 1))
    assert add(Polynomial((1,)), Polynomial.zero()) == Polynomial((1,))


def test_mul_examples():
    c = Fraction(5, 3)
    assert mul(Polynomial((-c, 1)), Polynomial((c, 1))) == Polynomial((-c * c, 0, 1))
    p = Polynomial((2, 0, 7))
    assert mul(p, Polynomial.one()) == p
    assert mul(p, Polynomial.zero()).is_zero


def test_differentiate_examples():
    assert differentiate(Polynomial((-3, 1))) == Polynomial.one()
    assert differentiate(Polynomial((0, 0, 1))) == Polynomial((0, 2))
    assert differentiate(Polynomial((42,))).is_zero


def test_evaluate_examples():
    c = Fraction(7, 2)
    assert evaluate(Polynomial((-c, 1)), c) == 0
    x2m1 = Polynomial((-1, 0, 1))
    assert evaluate(x2m1, 1) == 0 and evaluate(x2m1, -1) == 0
    assert evaluate(Polynomial.one(), Fraction(123, 7)) == 1


def test_canonical_form_strips_trailing_zeros():
    assert Polynomial((1, 2, 0, 0)).coeffs == (1, 2)
    assert Polynomial((0, 0)).is_zero
    assert Polynomial(()).degree() == NEG_INF


def test_degree_law_with_zero():
    assert (Polynomial.zero() * Polynomial((1, 1))).degree() == NEG_INF


@settings(max_examples=80)
@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert p + q == q + p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r


@settings(max_examples=80)
@given(polys, polys)
def test_degree_of_product(p, q):
    if p.is_zero or q.is_zero:
        assert (p * q).is_zero
    else:
        assert (p * q).degree() == p.degree() + q.degree()


@settings(max_examples=80)
@given(polys, polys)
def test_product_rule(p, q):
    lhs = (p * q).differentiate()
    rhs = p.differentiate() * q + p * q.differentiate()
    assert lhs == rhs


def test_text_round_trip():
    p = Polynomial((Fraction(1, 2), Fraction(-3), Fraction(7, 5)))
    assert p.to_text() == "1/2 -3 7/5"
    assert Polynomial.from_text(p.to_text()) == p
    assert Polynomial.from_text("0").is_zero
    assert Polynomial.zero().to_text() == "0"


def test_immutability():
    p = Polynomial((1, 2))
    with pytest.raises(AttributeError):
        p.coeffs = (3,)
