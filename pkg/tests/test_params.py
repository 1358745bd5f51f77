import random
from fractions import Fraction

import pytest
from mpmath import mpf

from x1jacobi.errors import CaseError, EqualityError, RangeError, SignError
from x1jacobi.params import Case, case_of, validate

from support import random_case1, random_case2


def test_case1_example():
    ps = validate(1, 3)
    assert ps.case_tag is Case.CASE1
    assert (ps.a, ps.b, ps.c) == (1, 2, 3)
    assert ps.is_rational


def test_case2_example():
    ps = validate(Fraction(-1, 2), Fraction(-3, 4))
    assert ps.case_tag is Case.CASE2
    assert (ps.a, ps.b, ps.c) == (Fraction(-1, 8), 5, -3)


def test_equal_parameters_rejected():
    with pytest.raises(EqualityError):
        validate(2, 2)


def test_mixed_signs_rejected():
    with pytest.raises(SignError):
        validate(Fraction(-1, 2), Fraction(1, 2))


def test_zero_parameter_rejected():
    with pytest.raises(SignError):
        validate(0, 1)
    with pytest.raises(SignError):
        validate(Fraction(-1, 2), 0)


def test_out_of_range_rejected():
    with pytest.raises(RangeError):
        validate(-1, 1)
    with pytest.raises(RangeError):
        validate(1, Fraction(-5, 4))


def test_wrong_ordering_rejected():
    # equal signs but neither admissible ordering
    with pytest.raises(CaseError):
        validate(3, 1)
    with pytest.raises(CaseError):
        validate(Fraction(-3, 4), Fraction(-1, 2))


def test_case_of():
    assert case_of(validate(1, 3)) is Case.CASE1
    assert case_of(validate(Fraction(-1, 2), Fraction(-3, 4))) is Case.CASE2
    assert case_of(validate(Fraction(1, 2), Fraction(3, 2))) is Case.CASE1


def test_rational_identities_exact():
    rng = random.Random(7)
    for draw in (random_case1, random_case2):
        for _ in range(200):
            ps = draw(rng)
            assert (ps.beta - ps.alpha) * ps.b == ps.beta + ps.alpha
            assert ps.a * (ps.c - ps.b) == 1


def test_sign_table_sweep():
    rng = random.Random(11)
    for _ in range(1000):
        ps = random_case1(rng)
        assert ps.a > 0 and ps.b > 1 and ps.c > 1
    for _ in range(1000):
        ps = random_case2(rng)
        assert ps.a < 0 and ps.b > 1 and ps.c < -1


def test_b_exceeds_one_both_cases():
    rng = random.Random(13)
    for draw in (random_case1, random_case2):
        for _ in range(100):
            ps = draw(rng)
            assert ps.b > 1
            assert (1 - ps.b) ** 2 > 0


def test_float_input_uses_extended_precision_backend():
    ps = validate(0.5, 1.5)
    assert not ps.is_rational
    assert isinstance(ps.a, mpf)
    exact = validate(Fraction(1, 2), Fraction(3, 2))
    assert abs(ps.b - float(exact.b)) < 1e-15
    assert ps.case_tag is Case.CASE1


def test_string_input_is_exact():
    ps = validate("-1/2", "-3/4")
    assert ps.is_rational
    assert ps.c == -3
