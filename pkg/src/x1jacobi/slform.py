"""Divergence-form coefficients p, q, w and the defining differential operator.

The second-order eigen-equation on (-1, 1), after clearing the (b - x)
denominator, reads

    T[y] = (x^2 - 1)(b - x) y'' + 2a(1 - bx) [(x - c) y' - y] = lambda (b - x) y = lambda B[y].

Multiplying the un-cleared equation by the weight

    w(x) = (1 - x)^alpha (1 + x)^beta / (x - b)^2

puts it in divergence form -(p y')' + q y = lambda w y with

    p(x) = (1 - x)^(alpha+1) (1 + x)^(beta+1) / (x - b)^2,
    q(x) = 2a(1 - bx) (1 - x)^alpha (1 + x)^beta / (x - b)^3.

This q is the zeroth-order coefficient forced by the identity
-(p y')' + q y = w * (raw operator applied to y); a variant q with an
extra (x - c) factor circulates but equals -p' (the first-order
coefficient) instead, and fails that identity.  Both forms are kept so
reports can show the comparison; see ``alternate_q_factors`` and
``sl_identity_residual``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from mpmath import mp, mpf

from .errors import DomainError
from .params import ParameterSet
from .polycore import Polynomial
from .scalars import DEFAULT_DPS, to_mpf


class Coefficient(str, Enum):
    P = "p"
    Q = "q"
    W = "w"


@dataclass(frozen=True)
class CoefficientFactors:
    """One coefficient as prefactor(x) * (1-x)^e1 * (1+x)^e2 * (x-b)^e3."""

    one_minus_x_exponent: object
    one_plus_x_exponent: object
    x_minus_b_exponent: int
    prefactor: Polynomial


@dataclass(frozen=True)
class CoefficientTriple:
    ps: ParameterSet
    p: CoefficientFactors
    q: CoefficientFactors
    w: CoefficientFactors

    def factors(self, which: Coefficient) -> CoefficientFactors:
        return {Coefficient.P: self.p, Coefficient.Q: self.q, Coefficient.W: self.w}[which]


@dataclass(frozen=True)
class OperatorImage:
    """Pencil images of one polynomial: T[y] and B[y] = (b - x) y."""

    T: Polynomial
    B: Polynomial


def coefficient_triple(ps: ParameterSet) -> CoefficientTriple:
    alpha, beta, a, b = ps.alpha, ps.beta, ps.a, ps.b
    one = Polynomial.one()
    return CoefficientTriple(
        ps=ps,
        p=CoefficientFactors(alpha + 1, beta + 1, -2, one),
        q=CoefficientFactors(alpha, beta, -3, Polynomial((2 * a, -2 * a * b))),
        w=CoefficientFactors(alpha, beta, -2, one),
    )


def alternate_q_factors(ps: ParameterSet) -> CoefficientFactors:
    """The rejected q variant carrying an extra (x - c) factor.

    Pointwise it equals -p'(x), i.e. the y'-coefficient of the divergence
    form, not the y-coefficient.  Retained only so that reports can show
    how badly it fails the divergence-form identity.
    """
    a, b, c = ps.a, ps.b, ps.c
    # 2a(1-bx)(c-x) expanded, ascending
    pre = Polynomial((2 * a, -2 * a * b)) * Polynomial((c, -1))
    return CoefficientFactors(ps.alpha, ps.beta, -3, pre)


def _eval_factors(fs: CoefficientFactors, ps: ParameterSet, x) -> mpf:
    xm = to_mpf(x)
    if abs(xm) > 1:
        raise DomainError(f"x = {x} outside [-1, 1]")
    if xm == 1 and fs.one_minus_x_exponent < 0:
        raise DomainError("coefficient not integrable at x = 1")
    if xm == -1 and fs.one_plus_x_exponent < 0:
        raise DomainError("coefficient not integrable at x = -1")
    e1 = to_mpf(fs.one_minus_x_exponent)
    e2 = to_mpf(fs.one_plus_x_exponent)
    val = fs.prefactor.to_mpf().evaluate(xm)
    val *= (1 - xm) ** e1 if (xm != 1 or e1 != 0) else 1
    val *= (1 + xm) ** e2 if (xm != -1 or e2 != 0) else 1
    val *= (xm - to_mpf(ps.b)) ** fs.x_minus_b_exponent
    return val


def eval_coefficient(ct: CoefficientTriple, which: Coefficient, x, dps: int | None = None) -> mpf:
    """Pointwise value of p, q or w at x in (-1, 1).

    Raises DomainError outside [-1, 1], and at an endpoint whenever the
    corresponding exponent is negative (non-integrable evaluation point).
    """
    with mp.workdps(dps or DEFAULT_DPS):
        return _eval_factors(ct.factors(which), ct.ps, x)


def p_prime(ps: ParameterSet, x, dps: int | None = None) -> mpf:
    """Analytic derivative of p: p'(x) = 2a(1 - bx)(x - c) w(x) / (x - b)."""
    ct = coefficient_triple(ps)
    with mp.workdps(dps or DEFAULT_DPS):
        xm = to_mpf(x)
        a, b, c = to_mpf(ps.a), to_mpf(ps.b), to_mpf(ps.c)
        w = _eval_factors(ct.w, ps, xm)
        return 2 * a * (1 - b * xm) * (xm - c) * w / (xm - b)


def apply_operator(ps: ParameterSet, y: Polynomial) -> OperatorImage:
    """Exact polynomial images T[y] and B[y] of the denominator-cleared pencil."""
    a, b, c = ps.a, ps.b, ps.c
    y1 = y.differentiate()
    y2 = y1.differentiate()
    x2m1_bmx = Polynomial((-1, 0, 1)) * Polynomial((b, -1))
    two_a_one_m_bx = Polynomial((2 * a, -2 * a * b))
    t = x2m1_bmx * y2 + two_a_one_m_bx * (Polynomial((-c, 1)) * y1 - y)
    return OperatorImage(T=t, B=Polynomial((b, -1)) * y)


def _divergence_residual(ps: ParameterSet, y: Polynomial, x,
                         q_factors: CoefficientFactors) -> mpf:
    """[-(p y')' + q y](x) - [w * raw-operator(y)](x) with the given q."""
    ct = coefficient_triple(ps)
    xm = to_mpf(x)
    if abs(xm) >= 1:
        raise DomainError(f"x = {x} outside (-1, 1)")
    a, b, c = to_mpf(ps.a), to_mpf(ps.b), to_mpf(ps.c)
    ym = y.to_mpf()
    y1 = ym.differentiate()
    y2 = y1.differentiate()
    yv, y1v, y2v = ym.evaluate(xm), y1.evaluate(xm), y2.evaluate(xm)

    p = _eval_factors(ct.p, ps, xm)
    w = _eval_factors(ct.w, ps, xm)
    q = _eval_factors(q_factors, ps, xm)
    pp = 2 * a * (1 - b * xm) * (xm - c) * w / (xm - b)

    lhs = -(pp * y1v + p * y2v) + q * yv
    raw = (xm * xm - 1) * y2v + 2 * a * (1 - b * xm) / (b - xm) * ((xm - c) * y1v - yv)
    return lhs - w * raw


def sl_identity_residual(ps: ParameterSet, y: Polynomial, x, dps: int | None = None) -> mpf:
    """Residual of the divergence-form identity at x; zero up to round-off.

    A nonzero residual (beyond round-off) would mean the q in use is not
    the zeroth-order coefficient of the divergence form.
    """
    with mp.workdps(dps or DEFAULT_DPS):
        return _divergence_residual(ps, y, x, coefficient_triple(ps).q)


def sl_identity_residual_alternate_q(ps: ParameterSet, y: Polynomial, x,
                                     dps: int | None = None) -> mpf:
    """Same residual computed with the rejected (x - c)-factor q variant."""
    with mp.workdps(dps or DEFAULT_DPS):
        return _divergence_residual(ps, y, x, alternate_q_factors(ps))


def symplectic_form(ps: ParameterSet, f_val, f_der, g_val, g_der, x,
                    dps: int | None = None) -> mpf:
    """[f, g](x) = f(x) p(x) g'(x) - p(x) f'(x) g(x) for real-valued f, g."""
    ct = coefficient_triple(ps)
    with mp.workdps(dps or DEFAULT_DPS):
        xm = to_mpf(x)
        if abs(xm) >= 1:
            raise DomainError(f"x = {x} outside (-1, 1)")
        p = _eval_factors(ct.p, ps, xm)
        return p * (to_mpf(f_val) * to_mpf(g_der) - to_mpf(f_der) * to_mpf(g_val))
