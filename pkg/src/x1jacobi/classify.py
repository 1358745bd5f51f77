"""Endpoint analysis: the lambda = 0 solution pair, regularity integrals,
limit-point/limit-circle classification and boundary-condition decay fits.

The two lambda = 0 solutions are phi1(x) = x - c and its reduction-of-order
companion phi2 = phi1 * I with I(x) = int_0^x 1/(p phi1^2) dt, normalized so
that p (phi1 phi2' - phi1' phi2) = 1.

Classification at an endpoint tracks whether |phi2|^2 w has an integrable
tail there.  Writing |phi2|^2 w ~ (1 -+ x)^e, the analytic exponents are

    endpoint +1:  e = -alpha for alpha > 0 (phi2 blows up),  e = alpha < 0 bounded case,
    endpoint -1:  mirrored with beta,

so +1 is limit-circle iff 0 < alpha < 1 within Case 1, limit-point iff
alpha >= 1, and Case 2 is limit-circle (indeed regular) at both ends.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from mpmath import mp, mpf

from .errors import ConvergenceError, DegenerateError, DomainError, ThresholdError
from .params import Case, ParameterSet
from .polycore import Polynomial
from .quadrature import cached_rule
from .scalars import DEFAULT_DPS, to_mpf
from .slform import coefficient_triple, _eval_factors


class Endpoint(str, Enum):
    PLUS_ONE = "+1"
    MINUS_ONE = "-1"

    @property
    def sign(self) -> int:
        return 1 if self is Endpoint.PLUS_ONE else -1


class Phi(str, Enum):
    PHI1 = "phi1"
    PHI2 = "phi2"


class Classification(str, Enum):
    LIMIT_CIRCLE = "LimitCircle"
    LIMIT_POINT = "LimitPoint"


@dataclass(frozen=True)
class EndpointReport:
    endpoint: Endpoint
    regular: bool
    classification: Classification
    analytic_exponent: object
    numeric_exponent: object  # mpf, or None when not requested / threshold-skipped
    boundary_condition_required: bool


# ---------------------------------------------------------------------------
# the lambda = 0 solutions
# ---------------------------------------------------------------------------

def phi1_eval(ps: ParameterSet, x) -> tuple:
    """(value, derivative) of phi1(x) = x - c; exact for exact inputs."""
    return (x - ps.c, x * 0 + 1)


def _p_of(ps: ParameterSet, x):
    return _eval_factors(coefficient_triple(ps).p, ps, x)


def _w_of(ps: ParameterSet, x):
    return _eval_factors(coefficient_triple(ps).w, ps, x)


def _reduction_integrand(ps: ParameterSet):
    alpha, beta = to_mpf(ps.alpha), to_mpf(ps.beta)
    b, c = to_mpf(ps.b), to_mpf(ps.c)

    def g(t):
        return (t - b) ** 2 / ((1 - t) ** (alpha + 1) * (1 + t) ** (beta + 1)
                               * (t - c) ** 2)

    return g


def _gl_panel(fn, lo, hi, n: int, dps: int):
    """Gauss-Legendre integral over [lo, hi]; orientation-aware (lo > hi allowed)."""
    rule = cached_rule(n, Fraction(0), Fraction(0), dps)
    half = (hi - lo) / 2
    mid = (hi + lo) / 2
    return half * sum(w * fn(mid + half * t) for t, w in zip(rule.nodes, rule.weights))


def _panel_points(x):
    """0 -> x with dyadic refinement toward the nearby endpoint."""
    pts = [mpf(0)]
    sgn = 1 if x > 0 else -1
    ax = abs(x)
    j = 1
    while j <= 80 and 1 - mpf(2) ** (-j) < ax:
        pts.append(sgn * (1 - mpf(2) ** (-j)))
        j += 1
    pts.append(x)
    out = [pts[0]]
    for p in pts[1:]:
        if (x > 0 and p > out[-1]) or (x < 0 and p < out[-1]):
            out.append(p)
    return out


def _reduction_integral(ps: ParameterSet, x, rel_tol, dps: int):
    """I(x) = int_0^x 1/(p phi1^2), panel-wise Gauss-Legendre with a two-
    resolution accuracy check."""
    if x == 0:
        return mpf(0)
    g = _reduction_integrand(ps)
    pts = _panel_points(x)
    for n in (48, 96, 192):
        coarse = sum(_gl_panel(g, lo, hi, n, dps) for lo, hi in zip(pts, pts[1:]))
        fine = sum(_gl_panel(g, lo, hi, n + 24, dps) for lo, hi in zip(pts, pts[1:]))
        if abs(fine - coarse) <= rel_tol * max(abs(fine), mpf(10) ** (-dps)):
            return fine
    raise ConvergenceError(f"reduction-of-order integral did not converge at x = {x}")


def phi2_eval(ps: ParameterSet, x, rel_tol=mpf("1e-12"), dps: int | None = None) -> tuple:
    """(value, derivative) of phi2 at x in (-1, 1).

    value = phi1(x) * I(x); the derivative uses the reduction-of-order
    identity phi2' = I + 1/(p phi1), which builds in the unit Wronskian.
    """
    dps = dps or DEFAULT_DPS
    with mp.workdps(dps):
        xm = to_mpf(x)
        if not (-1 < xm < 1):
            raise DomainError(f"x = {x} outside (-1, 1)")
        c = to_mpf(ps.c)
        I = _reduction_integral(ps, xm, to_mpf(rel_tol), dps)
        val = (xm - c) * I
        der = I + 1 / (_p_of(ps, xm) * (xm - c))
        return val, der


def wronskian(ps: ParameterSet, x, rel_tol=mpf("1e-12"), dps: int | None = None) -> mpf:
    """p (phi1 phi2' - phi1' phi2) at x; equals 1 for the normalized pair."""
    dps = dps or DEFAULT_DPS
    with mp.workdps(dps):
        xm = to_mpf(x)
        v1, d1 = (to_mpf(v) for v in phi1_eval(ps, xm))
        v2, d2 = phi2_eval(ps, xm, rel_tol, dps)
        return _p_of(ps, xm) * (v1 * d2 - d1 * v2)


# ---------------------------------------------------------------------------
# analytic classification
# ---------------------------------------------------------------------------

def _side_parameter(ps: ParameterSet, endpoint: Endpoint):
    return ps.alpha if endpoint is Endpoint.PLUS_ONE else ps.beta


def one_over_p_integrable(ps: ParameterSet, endpoint: Endpoint) -> bool:
    """Whether int 1/p converges at the endpoint: 1/p ~ (1 -+ x)^-(s+1) with
    s the side parameter, integrable iff s < 0.  False in Case 1, true in Case 2."""
    return _side_parameter(ps, endpoint) < 0


def l2_exponent_phi2(ps: ParameterSet, endpoint: Endpoint):
    """Growth exponent e with |phi2|^2 w ~ (1 -+ x)^e at the endpoint: e = -|s|."""
    s = _side_parameter(ps, endpoint)
    return -s if s > 0 else s


def l2_exponent_phi1(ps: ParameterSet, endpoint: Endpoint):
    """|phi1|^2 w ~ (1 -+ x)^s: always integrable since s > -1."""
    return _side_parameter(ps, endpoint)


def classify_endpoint(ps: ParameterSet, endpoint: Endpoint,
                      numeric: bool = False, dps: int | None = None) -> EndpointReport:
    """EndpointReport per the classification tables.

    Case 1: +1 is limit-circle iff 0 < alpha < 1 and limit-point iff
    alpha >= 1 (exactly 1 counts as limit-point); -1 mirrors with beta.
    Case 2 is regular and limit-circle at both endpoints.  With
    ``numeric=True`` the tail-fit exponent is attached, unless the side
    parameter sits at a classification threshold (fit skipped).
    """
    e = l2_exponent_phi2(ps, endpoint)
    cls = Classification.LIMIT_CIRCLE if e > -1 else Classification.LIMIT_POINT
    numeric_exp = None
    if numeric:
        try:
            numeric_exp = numeric_tail_exponent(ps, endpoint, Phi.PHI2, dps)
        except ThresholdError:
            numeric_exp = None
    return EndpointReport(
        endpoint=endpoint,
        regular=(ps.case_tag is Case.CASE2),
        classification=cls,
        analytic_exponent=e,
        numeric_exponent=numeric_exp,
        boundary_condition_required=(cls is Classification.LIMIT_CIRCLE),
    )


# ---------------------------------------------------------------------------
# slab-integral exponent fits
# ---------------------------------------------------------------------------

TAIL_KS = range(4, 21)


def _fit_slope(ks, vals):
    n = len(ks)
    sk = sum(ks)
    sv = sum(vals)
    skk = sum(k * k for k in ks)
    skv = sum(k * v for k, v in zip(ks, vals))
    den = n * skk - sk * sk
    if den == 0:
        raise DegenerateError("cannot fit a slope to fewer than two points")
    return (n * skv - sk * sv) / den


def _accelerated_slope(logs):
    """Slope of log2(slab) against k, with the leading geometric bias removed.

    The plain least-squares slope is biased by the subleading power of the
    tail expansion; Aitken acceleration of the difference sequence kills
    that bias.  Falls back to the raw fit when acceleration is unstable.
    """
    ks = [mpf(k) for k in range(len(logs))]
    base = _fit_slope(ks, logs)
    diffs = [logs[i + 1] - logs[i] for i in range(len(logs) - 1)]
    best = None
    for i in range(len(diffs) - 2):
        d0, d1, d2 = diffs[i], diffs[i + 1], diffs[i + 2]
        den = d2 + d0 - 2 * d1
        if abs(den) > mpf("1e-30") * (1 + abs(d2)):
            best = (d0 * d2 - d1 * d1) / den
    if best is None:
        best = diffs[-1] if diffs else base
    # acceleration should refine, not contradict, the raw fit
    if abs(best - base) > 1 + abs(base):
        return base
    return best


def _slab_bounds(endpoint: Endpoint, k: int):
    if endpoint is Endpoint.PLUS_ONE:
        return 1 - mpf(2) ** (-k), 1 - mpf(2) ** (-k - 1)
    return -1 + mpf(2) ** (-k - 1), -1 + mpf(2) ** (-k)


def _slab_exponent(slabs):
    logs = [mp.log(s, 2) for s in slabs]
    return -_accelerated_slope(logs) - 1


class _IncrementalPhi2:
    """phi2 along a monotone sweep toward an endpoint.

    Accumulates the reduction-of-order integral between consecutive query
    points, so a slab scan costs one short Gauss-Legendre panel per point
    instead of a fresh integral from 0.
    """

    def __init__(self, ps: ParameterSet, dps: int, panel_nodes: int = 16):
        self.ps = ps
        self.dps = dps
        self.n = panel_nodes
        self.g = _reduction_integrand(ps)
        self.c = to_mpf(ps.c)
        self.last = mpf(0)
        self.acc = mpf(0)

    def value(self, x):
        self.acc += _gl_panel(self.g, self.last, x, self.n, self.dps)
        self.last = x
        return (x - self.c) * self.acc


def numeric_tail_exponent(ps: ParameterSet, endpoint: Endpoint, which: Phi,
                          dps: int | None = None) -> mpf:
    """Fitted growth exponent of |phi|^2 w from dyadic slab integrals (k = 4..20).

    Raises ThresholdError when which = PHI2 and the side parameter is
    within 0.1 of the classification threshold 1, where log corrections
    make a power fit meaningless.
    """
    dps = dps or DEFAULT_DPS
    s = _side_parameter(ps, endpoint)
    if which is Phi.PHI2 and abs(to_mpf(s) - 1) <= mpf("0.1"):
        raise ThresholdError(
            f"side parameter {s} within 0.1 of the classification threshold")
    with mp.workdps(dps):
        slabs = []
        if which is Phi.PHI1:
            c = to_mpf(ps.c)

            def density(x):
                return (x - c) ** 2 * _w_of(ps, x)

            for k in TAIL_KS:
                lo, hi = _slab_bounds(endpoint, k)
                slabs.append(_gl_panel(density, lo, hi, 24, dps))
        else:
            sweep = _IncrementalPhi2(ps, dps)
            rule = cached_rule(24, Fraction(0), Fraction(0), dps)
            for k in TAIL_KS:
                lo, hi = _slab_bounds(endpoint, k)
                half, mid = (hi - lo) / 2, (hi + lo) / 2
                nodes = [mid + half * t for t in rule.nodes]
                if endpoint is Endpoint.MINUS_ONE:
                    nodes = nodes[::-1]  # keep the sweep monotone toward -1
                vals = {}
                for x in nodes:
                    v2 = sweep.value(x)
                    vals[x] = v2 * v2 * _w_of(ps, x)
                total = half * sum(w * vals[mid + half * t]
                                   for t, w in zip(rule.nodes, rule.weights))
                slabs.append(abs(total))
        return _slab_exponent(slabs)


def one_over_p_tail_exponent(ps: ParameterSet, endpoint: Endpoint,
                             dps: int | None = None) -> mpf:
    """Fitted exponent of 1/p at the endpoint; analytic value -(s + 1).

    The fitted value exceeds -1 exactly when int 1/p converges there,
    confirming ``one_over_p_integrable`` numerically.
    """
    dps = dps or DEFAULT_DPS
    with mp.workdps(dps):
        slabs = []
        for k in TAIL_KS:
            lo, hi = _slab_bounds(endpoint, k)
            slabs.append(_gl_panel(lambda x: 1 / _p_of(ps, x), lo, hi, 24, dps))
        return _slab_exponent(slabs)


# ---------------------------------------------------------------------------
# boundary-condition decay
# ---------------------------------------------------------------------------

BOUNDARY_KS = range(6, 41)


def boundary_bracket(ps: ParameterSet, f: Polynomial, x, dps: int | None = None) -> mpf:
    """[f, phi1](x) = p(x) (f(x) - f'(x)(x - c))."""
    with mp.workdps(dps or DEFAULT_DPS):
        xm = to_mpf(x)
        fm = f.to_mpf()
        c = to_mpf(ps.c)
        return _p_of(ps, xm) * (fm.evaluate(xm) - fm.differentiate().evaluate(xm) * (xm - c))


def boundary_decay_check(ps: ParameterSet, f: Polynomial,
                         dps: int | None = None) -> tuple:
    """Decay exponents of [f, phi1] at geometric approaches to +1 and -1.

    For an eigenpolynomial whose bracket factor does not vanish at the
    endpoint the fits return (alpha + 1, beta + 1).  Raises DegenerateError
    when [f, phi1] vanishes identically, i.e. f is a multiple of phi1.
    """
    dps = dps or DEFAULT_DPS
    bracket_factor = f - f.differentiate() * Polynomial((-ps.c, 1))
    if bracket_factor.is_zero:
        raise DegenerateError("[f, phi1] is identically zero (f is a multiple of phi1)")
    with mp.workdps(dps):
        fm = f.to_mpf()
        fd = fm.differentiate()
        c = to_mpf(ps.c)
        out = []
        for endpoint in (Endpoint.PLUS_ONE, Endpoint.MINUS_ONE):
            ks, logs = [], []
            for k in BOUNDARY_KS:
                x = endpoint.sign * (1 - mpf(2) ** (-k))
                br = _p_of(ps, x) * (fm.evaluate(x) - fd.evaluate(x) * (x - c))
                if br == 0:
                    continue
                ks.append(mpf(k))
                logs.append(mp.log(abs(br), 2))
            if len(ks) < 10:
                raise DegenerateError(
                    f"bracket vanished on the approach to {endpoint.value}")
            out.append(-_fit_slope(ks, logs))
        return out[0], out[1]
