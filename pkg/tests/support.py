"""Shared helpers for the test suite: reference parameter sets, randomized
parameter sweeps over the two admissible regions, and independent oracles
(closed-form Jacobi moments, high-precision numerical differentiation)."""

from __future__ import annotations

import random
from fractions import Fraction

from mpmath import mp, mpf

from x1jacobi.params import ParameterSet, validate


def ps_case1() -> ParameterSet:
    return validate(1, 3)


def ps_case2() -> ParameterSet:
    return validate(Fraction(-1, 2), Fraction(-3, 4))


def random_case1(rng: random.Random) -> ParameterSet:
    """Exact-rational draw with beta > alpha > 0."""
    alpha = Fraction(rng.randint(1, 2999), 1000)
    beta = alpha + Fraction(rng.randint(1, 3000), 1000)
    return validate(alpha, beta)


def random_case2(rng: random.Random) -> ParameterSet:
    """Exact-rational draw with -1 < beta < alpha < 0."""
    beta = -Fraction(rng.randint(2, 999), 1000)
    alpha = beta * Fraction(rng.randint(1, 999), 1000)
    return validate(alpha, beta)


def random_fraction_poly(rng: random.Random, max_degree: int,
                         bound: int = 9) -> list[Fraction]:
    degree = rng.randint(0, max_degree)
    coeffs = [Fraction(rng.randint(-bound, bound)) for _ in range(degree)]
    lead = 0
    while lead == 0:
        lead = rng.randint(-bound, bound)
    coeffs.append(Fraction(lead))
    return coeffs


def jacobi_moment(k: int, alpha, beta) -> mpf:
    """int_{-1}^{1} x^k (1-x)^alpha (1+x)^beta dx via the substitution
    x = 1 - 2t and the Beta integral; independent of any quadrature rule."""
    al = mpf(Fraction(alpha).numerator) / Fraction(alpha).denominator
    be = mpf(Fraction(beta).numerator) / Fraction(beta).denominator
    total = mpf(0)
    for j in range(k + 1):
        total += mp.binomial(k, j) * (-2) ** j * mp.beta(al + 1 + j, be + 1)
    return mpf(2) ** (al + be + 1) * total
