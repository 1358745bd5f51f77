"""Weighted inner products on (-1, 1), Gram matrices and projection residuals.

Integrals against the orthogonality weight w(x) = (1-x)^alpha (1+x)^beta
/ (x-b)^2 are computed with classical Gauss-Jacobi rules: the factor
1/(x-b)^2 is analytic on [-1, 1] (b > 1), so it is folded into the
integrand while the endpoint singularities stay inside the Jacobi weight
and are handled exactly.

Rule construction follows Golub-Welsch: the symmetric tridiagonal matrix
of the Jacobi-weight recurrence is diagonalized in double precision for
node seeds, and each node is then polished by Newton iteration on the
orthonormal recurrence at working precision.  Weights come from the
Christoffel identity w_i = 1 / sum_k p~_k(x_i)^2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg
from mpmath import mp, mpf

from .errors import ConvergenceError, PrecisionError
from .params import ParameterSet
from .polycore import Polynomial
from .scalars import DEFAULT_DPS, to_mpf

DEFAULT_REL_TOL = mpf("1e-12")
MAX_NODES = 2 ** 14
START_NODES = 16


@dataclass(frozen=True)
class QuadratureRule:
    nodes: tuple
    weights: tuple
    alpha: object
    beta: object
    node_count: int
    dps: int


def jacobi_recurrence(n: int, alpha, beta) -> tuple[list, list]:
    """Monic three-term recurrence coefficients a_k, b_k (k = 0..n-1).

    b_0 carries the total mass 2^(alpha+beta+1) B(alpha+1, beta+1).
    """
    al, be = to_mpf(alpha), to_mpf(beta)
    s = al + be
    a = [mpf(0)] * n
    b = [mpf(0)] * n
    a[0] = (be - al) / (s + 2)
    b[0] = mpf(2) ** (s + 1) * mp.beta(al + 1, be + 1)
    for k in range(1, n):
        a[k] = (be * be - al * al) / ((2 * k + s) * (2 * k + s + 2))
        if k == 1:
            b[k] = 4 * (al + 1) * (be + 1) / ((s + 2) ** 2 * (s + 3))
        else:
            b[k] = (4 * k * (k + al) * (k + be) * (k + s)
                    / ((2 * k + s) ** 2 * (2 * k + s + 1) * (2 * k + s - 1)))
    return a, b


def _orthonormal_scan(x, n, rec_a, rec_sqb, want_der=True):
    """Values (and derivatives) of the orthonormal polynomials p~_0..p~_n at x."""
    vals = [mpf(0)] * (n + 1)
    ders = [mpf(0)] * (n + 1)
    vals[0] = 1 / rec_sqb[0]
    for k in range(n):
        pm1 = vals[k - 1] if k >= 1 else mpf(0)
        vals[k + 1] = ((x - rec_a[k]) * vals[k] - rec_sqb[k] * pm1) / rec_sqb[k + 1]
        if want_der:
            dm1 = ders[k - 1] if k >= 1 else mpf(0)
            ders[k + 1] = (vals[k] + (x - rec_a[k]) * ders[k]
                           - rec_sqb[k] * dm1) / rec_sqb[k + 1]
    return vals, ders


def gauss_jacobi(node_count: int, alpha, beta, dps: int | None = None) -> QuadratureRule:
    """Gauss-Jacobi rule exact for polynomial degree <= 2*node_count - 1."""
    if node_count < 1:
        raise ValueError("node_count must be >= 1")
    if not (alpha > -1 and beta > -1):
        raise ValueError("alpha, beta must exceed -1")
    dps = dps or DEFAULT_DPS
    with mp.workdps(dps):
        rec_a, rec_b = jacobi_recurrence(node_count + 1, alpha, beta)
        rec_sqb = [mp.sqrt(v) for v in rec_b]
        diag = np.array([float(v) for v in rec_a[:node_count]])
        off = np.array([float(v) for v in rec_sqb[1:node_count]])
        if node_count == 1:
            seeds = diag
        else:
            try:
                seeds = scipy.linalg.eigh_tridiagonal(diag, off, eigvals_only=True)
            except scipy.linalg.LinAlgError as exc:  # pragma: no cover
                raise PrecisionError(f"tridiagonal eigen-iteration failed: {exc}")

        tol = mpf(10) ** (-dps + 2)
        nodes, weights = [], []
        for seed in seeds:
            x = mpf(float(seed))
            for _ in range(60):
                vals, ders = _orthonormal_scan(x, node_count, rec_a, rec_sqb)
                step = vals[node_count] / ders[node_count]
                x -= step
                if abs(step) <= tol * (1 + abs(x)):
                    break
            else:
                raise PrecisionError(f"Newton polish stalled at node seed {seed}")
            vals, _ = _orthonormal_scan(x, node_count, rec_a, rec_sqb, want_der=False)
            weights.append(1 / sum(v * v for v in vals[:node_count]))
            nodes.append(x)

        for lo, hi in zip(nodes, nodes[1:]):
            if not lo < hi:
                raise PrecisionError("polished nodes are not strictly increasing")
        if not (-1 < nodes[0] and nodes[-1] < 1):
            raise PrecisionError("polished nodes left (-1, 1)")
        return QuadratureRule(nodes=tuple(nodes), weights=tuple(weights),
                              alpha=alpha, beta=beta, node_count=node_count, dps=dps)


_RULE_CACHE: dict = {}


def cached_rule(node_count: int, alpha, beta, dps: int) -> QuadratureRule:
    key = (node_count, repr(alpha), repr(beta), dps)
    rule = _RULE_CACHE.get(key)
    if rule is None:
        rule = _RULE_CACHE[key] = gauss_jacobi(node_count, alpha, beta, dps)
    return rule


def _integrate_pair(ps: ParameterSet, fm: Polynomial, gm: Polynomial,
                    rel_tol, max_nodes: int, dps: int):
    """Adaptive node doubling of int f g w; returns the converged value.

    Convergence is relative against max(|value|, sum |terms|): a strictly
    relative test can never terminate on an integral whose true value is 0.
    """
    b = to_mpf(ps.b)
    prev = None
    n = START_NODES
    while n <= max_nodes:
        rule = cached_rule(n, ps.alpha, ps.beta, dps)
        total = mpf(0)
        scale = mpf(0)
        for x, w in zip(rule.nodes, rule.weights):
            term = w * fm.evaluate(x) * gm.evaluate(x) / (x - b) ** 2
            total += term
            scale += abs(term)
        if prev is not None and abs(total - prev) <= rel_tol * max(abs(total), scale):
            return total
        prev = total
        n *= 2
    raise ConvergenceError(f"inner product did not converge within {max_nodes} nodes")


def inner_product(ps: ParameterSet, f: Polynomial, g: Polynomial,
                  rel_tol=DEFAULT_REL_TOL, max_nodes: int = MAX_NODES,
                  dps: int | None = None) -> mpf:
    """Weighted inner product int_{-1}^{1} f g w dx."""
    if not rel_tol > 0:
        raise ValueError("rel_tol must be positive")
    dps = dps or DEFAULT_DPS
    with mp.workdps(dps):
        return _integrate_pair(ps, f.to_mpf(), g.to_mpf(), to_mpf(rel_tol), max_nodes, dps)


def weighted_norm(ps: ParameterSet, f: Polynomial,
                  rel_tol=DEFAULT_REL_TOL, dps: int | None = None) -> mpf:
    dps = dps or DEFAULT_DPS
    with mp.workdps(dps):
        return mp.sqrt(inner_product(ps, f, f, rel_tol, dps=dps))


def gram(ps: ParameterSet, polys: list[Polynomial],
         rel_tol=DEFAULT_REL_TOL, dps: int | None = None) -> list[list[mpf]]:
    """Symmetric matrix of pairwise inner products."""
    dps = dps or DEFAULT_DPS
    k = len(polys)
    out = [[mpf(0)] * k for _ in range(k)]
    with mp.workdps(dps):
        mpolys = [p.to_mpf() for p in polys]
        for i in range(k):
            for j in range(i + 1):
                try:
                    v = _integrate_pair(ps, mpolys[i], mpolys[j],
                                        to_mpf(rel_tol), MAX_NODES, dps)
                except ConvergenceError as exc:
                    raise ConvergenceError(f"gram entry ({i}, {j}): {exc}")
                out[i][j] = out[j][i] = v
    return out


def normalized_gram(ps: ParameterSet, polys: list[Polynomial],
                    rel_tol=DEFAULT_REL_TOL, dps: int | None = None) -> list[list[mpf]]:
    """Gram matrix scaled to unit diagonal: G_ij / sqrt(G_ii G_jj)."""
    G = gram(ps, polys, rel_tol, dps)
    with mp.workdps(dps or DEFAULT_DPS):
        d = [mp.sqrt(G[i][i]) for i in range(len(polys))]
        return [[G[i][j] / (d[i] * d[j]) for j in range(len(polys))]
                for i in range(len(polys))]


def project_residual(ps: ParameterSet, f: Polynomial, basis: list[Polynomial],
                     rel_tol=DEFAULT_REL_TOL, dps: int | None = None) -> mpf:
    """Weighted norm of f minus its coefficient-wise projection onto basis.

    The residual polynomial is formed explicitly and its norm integrated
    directly (a nonnegative integrand), so returned values are monotone
    under basis growth instead of suffering subtraction cancellation.
    """
    if not basis:
        raise ValueError("basis must be nonempty")
    dps = dps or DEFAULT_DPS
    with mp.workdps(dps):
        fm = f.to_mpf()
        r = fm
        for e in basis:
            em = e.to_mpf()
            coef = (_integrate_pair(ps, fm, em, to_mpf(rel_tol), MAX_NODES, dps)
                    / _integrate_pair(ps, em, em, to_mpf(rel_tol), MAX_NODES, dps))
            r = r - em.scale(coef)
        return mp.sqrt(_integrate_pair(ps, r, r, to_mpf(rel_tol), MAX_NODES, dps))
