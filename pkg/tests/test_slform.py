import random
from fractions import Fraction

import pytest
from mpmath import mp, mpf

from x1jacobi.errors import DomainError
from x1jacobi.polycore import Polynomial
from x1jacobi.slform import (
    Coefficient,
    alternate_q_factors,
    apply_operator,
    coefficient_triple,
    eval_coefficient,
    p_prime,
    sl_identity_residual,
    sl_identity_residual_alternate_q,
    symplectic_form,
)

from support import ps_case1, ps_case2, random_fraction_poly


def test_triple_structure():
    ps = ps_case1()
    ct = coefficient_triple(ps)
    assert (ct.w.one_minus_x_exponent, ct.w.one_plus_x_exponent,
            ct.w.x_minus_b_exponent) == (ps.alpha, ps.beta, -2)
    assert ct.w.prefactor == Polynomial.one()
    assert (ct.p.one_minus_x_exponent, ct.p.one_plus_x_exponent,
            ct.p.x_minus_b_exponent) == (ps.alpha + 1, ps.beta + 1, -2)
    assert ct.q.x_minus_b_exponent == -3
    assert ct.q.prefactor == Polynomial((2 * ps.a, -2 * ps.a * ps.b))


def test_pointwise_values_case1():
    ct = coefficient_triple(ps_case1())
    assert abs(eval_coefficient(ct, Coefficient.W, 0) - mpf(1) / 4) < mpf("1e-45")
    assert abs(eval_coefficient(ct, Coefficient.P, 0) - mpf(1) / 4) < mpf("1e-45")
    # q(0) = 2a * 1 * 1 / (0 - b)^3 = 2 / (-8)
    assert abs(eval_coefficient(ct, Coefficient.Q, 0) + mpf(1) / 4) < mpf("1e-45")


def test_pointwise_values_case2():
    ct = coefficient_triple(ps_case2())
    assert abs(eval_coefficient(ct, Coefficient.W, 0) - mpf(1) / 25) < mpf("1e-45")


def test_weight_vanishes_toward_plus_one_case1():
    ct = coefficient_triple(ps_case1())
    w = eval_coefficient(ct, Coefficient.W, Fraction(999999, 1000000))
    assert 0 < w < mpf("1e-5")


def test_domain_errors():
    ct1 = coefficient_triple(ps_case1())
    with pytest.raises(DomainError):
        eval_coefficient(ct1, Coefficient.W, Fraction(3, 2))
    with pytest.raises(DomainError):
        eval_coefficient(ct1, Coefficient.W, -2)
    # at an endpoint the value exists only if the exponent there is nonnegative
    assert eval_coefficient(ct1, Coefficient.W, 1) == 0
    ct2 = coefficient_triple(ps_case2())  # alpha < 0: w blows up at +1
    with pytest.raises(DomainError):
        eval_coefficient(ct2, Coefficient.W, 1)


def test_positivity_on_dense_sample():
    for ps in (ps_case1(), ps_case2()):
        ct = coefficient_triple(ps)
        for i in range(-99, 100):
            x = Fraction(i, 100)
            assert eval_coefficient(ct, Coefficient.W, x) > 0
            assert eval_coefficient(ct, Coefficient.P, x) > 0
            # 1/p, q, w finite on compact subintervals
            assert mp.isfinite(eval_coefficient(ct, Coefficient.Q, x))


def test_apply_operator_on_phi1():
    for ps in (ps_case1(), ps_case2()):
        image = apply_operator(ps, Polynomial((-ps.c, 1)))
        assert image.T.is_zero
        assert image.B == Polynomial((ps.b, -1)) * Polynomial((-ps.c, 1))


def test_apply_operator_on_constant():
    ps = ps_case1()
    image = apply_operator(ps, Polynomial.one())
    assert image.T == Polynomial((-2 * ps.a, 2 * ps.a * ps.b))
    assert image.B == Polynomial((ps.b, -1))


def test_apply_operator_on_zero():
    image = apply_operator(ps_case1(), Polynomial.zero())
    assert image.T.is_zero and image.B.is_zero


def test_operator_linearity_exact():
    rng = random.Random(3)
    ps = ps_case2()
    for _ in range(25):
        y1 = Polynomial(random_fraction_poly(rng, 7))
        y2 = Polynomial(random_fraction_poly(rng, 7))
        u = Fraction(rng.randint(-5, 5))
        v = Fraction(rng.randint(-5, 5))
        combo = apply_operator(ps, y1.scale(u) + y2.scale(v))
        i1 = apply_operator(ps, y1)
        i2 = apply_operator(ps, y2)
        assert combo.T == i1.T.scale(u) + i2.T.scale(v)
        assert combo.B == i1.B.scale(u) + i2.B.scale(v)


def test_operator_degree_bound():
    rng = random.Random(5)
    ps = ps_case1()
    for _ in range(40):
        y = Polynomial(random_fraction_poly(rng, 40))
        image = apply_operator(ps, y)
        assert image.T.degree() <= y.degree() + 1
        assert image.B.degree() == y.degree() + 1


def test_p_prime_against_numerical_derivative():
    """Oracle: mpmath numerical differentiation of p, independent of the
    analytic p' formula."""
    rng = random.Random(17)
    with mp.workdps(60):
        for ps in (ps_case1(), ps_case2()):
            ct = coefficient_triple(ps)

            def p_fn(x, ct=ct, ps=ps):
                return eval_coefficient(ct, Coefficient.P, x, dps=60)

            for _ in range(100):
                x = mpf(rng.uniform(-0.95, 0.95))
                numeric = mp.diff(p_fn, x)
                analytic = p_prime(ps, x, dps=60)
                assert abs(numeric - analytic) <= mpf("1e-40") * (1 + abs(analytic))


def test_sl_identity_residual_phi1():
    ps = ps_case1()
    phi1 = Polynomial((-ps.c, 1))
    for x in (Fraction(-3, 4), Fraction(1, 3), Fraction(9, 10)):
        assert abs(sl_identity_residual(ps, phi1, x)) < mpf("1e-30")


def test_sl_identity_residual_random():
    rng = random.Random(23)
    for ps in (ps_case1(), ps_case2()):
        for _ in range(50):
            y = Polynomial(random_fraction_poly(rng, 5))
            x = Fraction(rng.randint(-94, 94), 100)
            assert abs(sl_identity_residual(ps, y, x)) < mpf("1e-25")


def test_sl_identity_residual_zero_poly():
    assert sl_identity_residual(ps_case1(), Polynomial.zero(), Fraction(1, 3)) == 0


def test_sl_identity_residual_against_numerical_derivative():
    """Full independent route: (p y')' computed by mpmath numerical
    differentiation of the product p * y', not by the analytic p' formula."""
    rng = random.Random(29)
    with mp.workdps(60):
        for ps in (ps_case1(), ps_case2()):
            ct = coefficient_triple(ps)
            a, b, c = (mpf(v.numerator) / v.denominator for v in (ps.a, ps.b, ps.c))
            for _ in range(10):
                y = Polynomial(random_fraction_poly(rng, 5)).to_mpf()
                y1 = y.differentiate()
                x = mpf(rng.uniform(-0.9, 0.9))

                def p_yprime(t, ct=ct, ps=ps, y1=y1):
                    return eval_coefficient(ct, Coefficient.P, t, dps=60) * y1.evaluate(t)

                d = mp.diff(p_yprime, x)
                q = eval_coefficient(ct, Coefficient.Q, x, dps=60)
                w = eval_coefficient(ct, Coefficient.W, x, dps=60)
                lhs = -d + q * y.evaluate(x)
                raw = ((x * x - 1) * y.differentiate().differentiate().evaluate(x)
                       + 2 * a * (1 - b * x) / (b - x)
                       * ((x - c) * y1.evaluate(x) - y.evaluate(x)))
                assert abs(lhs - w * raw) < mpf("1e-35") * (1 + abs(lhs))


def test_alternate_q_fails_identity():
    rng = random.Random(31)
    ps = ps_case1()
    worst = mpf(0)
    for _ in range(20):
        y = Polynomial(random_fraction_poly(rng, 4))
        x = Fraction(rng.randint(-80, 80), 100)
        worst = max(worst, abs(sl_identity_residual_alternate_q(ps, y, x)))
    assert worst > mpf("1e-3")


def test_alternate_q_equals_minus_p_prime():
    ps = ps_case2()
    alt = alternate_q_factors(ps)
    from x1jacobi.slform import _eval_factors
    with mp.workdps(50):
        for x in (mpf("-0.7"), mpf("0.2"), mpf("0.85")):
            assert abs(_eval_factors(alt, ps, x) + p_prime(ps, x)) < mpf("1e-40")


def test_symplectic_form_antisymmetry():
    ps = ps_case1()
    v = symplectic_form(ps, Fraction(2), Fraction(5), Fraction(-1), Fraction(3),
                        Fraction(1, 4))
    w = symplectic_form(ps, Fraction(-1), Fraction(3), Fraction(2), Fraction(5),
                        Fraction(1, 4))
    assert v == -w
    assert symplectic_form(ps, 2, 5, 2, 5, Fraction(1, 4)) == 0


def test_symplectic_form_example():
    assert abs(symplectic_form(ps_case1(), 1, 0, 0, 1, 0) - mpf(1) / 4) < mpf("1e-45")


def test_symplectic_form_domain():
    with pytest.raises(DomainError):
        symplectic_form(ps_case1(), 1, 0, 0, 1, 1)
