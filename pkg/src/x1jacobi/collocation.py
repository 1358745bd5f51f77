"""Independent spectral-collocation eigensolver for the defining equation.

Chebyshev-Gauss-Lobatto collocation of the denominator-cleared pencil

    diag((x^2-1)(b-x)) D2 + diag(2a(1-bx)(x-c)) D1 - diag(2a(1-bx))  vs  diag(b-x)

on the full grid (the leading coefficient vanishes at the endpoints, so the
endpoint rows are the equation's own degenerate limits; no boundary rows
are imposed).  Polynomial eigenfunctions are represented exactly by the
grid, so their eigenvalues are resolution-independent; everything else
drifts between resolutions and is removed by requiring agreement between
the node_count and node_count + 16 runs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import ConvergenceError
from .eigensolve import discover_spectrum, lambda_formula, lambda_pencil
from .params import ParameterSet

# eigenvalues are kept only if the two resolutions agree this closely
FILTER_REL_TOL = 1e-6
# imag/real ratio beyond which an eigenvalue is discarded as spurious
IMAG_RATIO = 1e-8
MAX_NODES = 512


@dataclass(frozen=True)
class CollocationProblem:
    node_count: int
    nodes: np.ndarray
    D1: np.ndarray
    D2: np.ndarray
    A_coll: np.ndarray
    B_coll: np.ndarray


def chebyshev_lobatto(node_count: int) -> tuple[np.ndarray, np.ndarray]:
    """Ascending Chebyshev-Gauss-Lobatto nodes on [-1, 1] and the
    differentiation matrix in that ordering."""
    N = node_count - 1
    if N == 0:
        return np.array([1.0]), np.zeros((1, 1))
    j = np.arange(N + 1)
    x = np.cos(np.pi * j / N)
    c = np.hstack(([2.0], np.ones(N - 1), [2.0])) * (-1.0) ** j
    X = np.tile(x, (N + 1, 1)).T
    dX = X - X.T
    D = np.outer(c, 1.0 / c) / (dX + np.eye(N + 1))
    D -= np.diag(D.sum(axis=1))
    # reverse to ascending order; the map is unchanged, only relabeled
    return x[::-1].copy(), D[::-1, ::-1].copy()


def build_problem(ps: ParameterSet, node_count: int) -> CollocationProblem:
    if node_count > MAX_NODES:
        raise ValueError(f"node_count > {MAX_NODES} not supported by the dense solver")
    a, b, c = float(ps.a), float(ps.b), float(ps.c)
    x, D1 = chebyshev_lobatto(node_count)
    D2 = D1 @ D1
    A = (np.diag((x ** 2 - 1.0) * (b - x)) @ D2
         + np.diag(2.0 * a * (1.0 - b * x) * (x - c)) @ D1
         - np.diag(2.0 * a * (1.0 - b * x)))
    B = np.diag(b - x)
    return CollocationProblem(node_count=node_count, nodes=x, D1=D1, D2=D2,
                              A_coll=A, B_coll=B)


def _real_eigenvalues(problem: CollocationProblem) -> np.ndarray:
    w = scipy.linalg.eig(problem.A_coll, problem.B_coll, right=False)
    keep = []
    for z in w:
        if not np.isfinite(z):
            continue
        if abs(z.imag) <= IMAG_RATIO * (1.0 + abs(z.real)):
            keep.append(z.real)
    return np.array(sorted(keep))


def solve_spectrum(ps: ParameterSet, node_count: int, k: int) -> list[float]:
    """k smallest eigenvalues surviving the two-resolution filter, ascending."""
    if node_count < 4 * k + 20:
        raise ValueError("node_count must be at least 4*k + 20")
    coarse = _real_eigenvalues(build_problem(ps, node_count))
    fine = _real_eigenvalues(build_problem(ps, node_count + 16))
    retained = [lam for lam in coarse
                if np.any(np.abs(fine - lam) <= FILTER_REL_TOL * (1.0 + abs(lam)))]
    if len(retained) < k:
        raise ConvergenceError(
            f"only {len(retained)} eigenvalues survived filtering, needed {k}")
    return retained[:k]


def lambda_zero_eigenvector(ps: ParameterSet, node_count: int) -> tuple[np.ndarray, np.ndarray]:
    """(nodes, eigenvector) for the eigenvalue nearest zero; used to check
    correlation with phi1 samples."""
    problem = build_problem(ps, node_count)
    w, vr = scipy.linalg.eig(problem.A_coll, problem.B_coll)
    idx = int(np.argmin(np.abs(w)))
    v = np.real(vr[:, idx])
    return problem.nodes, v


def pair_eigenvalues(computed, targets, rel_tol: float):
    """Greedy nearest pairing; returns (pairs, unmatched_computed, unmatched_targets).

    pairs entries are (computed, target, relative_distance).
    """
    pairs = []
    unmatched_computed = []
    remaining = list(targets)
    for lam in computed:
        if not remaining:
            unmatched_computed.append(lam)
            continue
        tgt = min(remaining, key=lambda t: abs(t - lam))
        rel = abs(tgt - lam) / (1.0 + abs(tgt))
        if rel <= rel_tol:
            pairs.append((lam, tgt, rel))
            remaining.remove(tgt)
        else:
            unmatched_computed.append(lam)
    return pairs, unmatched_computed, remaining


@dataclass(frozen=True)
class SpectrumComparison:
    """Pairing of collocation eigenvalues against the exact pencil spectrum and
    against both closed-form candidate sequences."""

    k: int
    node_count: int
    collocation: list = field(default_factory=list)
    pencil: list = field(default_factory=list)
    formula_printed: list = field(default_factory=list)
    formula_shifted: list = field(default_factory=list)
    pairs_pencil: list = field(default_factory=list)
    unmatched_collocation: list = field(default_factory=list)
    missing_pencil: list = field(default_factory=list)
    unmatched_vs_printed: list = field(default_factory=list)
    unmatched_vs_shifted: list = field(default_factory=list)

    @property
    def printed_formula_matches(self) -> bool:
        return not self.unmatched_vs_printed

    @property
    def shifted_formula_matches(self) -> bool:
        return not self.unmatched_vs_shifted


COMPARE_REL_TOL = 1e-4


def compare_to_formula(ps: ParameterSet, k: int, node_count: int) -> SpectrumComparison:
    """Cross-check the collocation spectrum against the exact pencil and the
    two closed forms; any collocation eigenvalue without a pencil partner
    within 1e-4 relative is flagged (candidate extra spectrum or spurious
    mode), as is any pencil value the collocation missed."""
    computed = solve_spectrum(ps, node_count, k)
    pencil = [float(lam) for lam, _ in discover_spectrum(ps, k)][:k]
    printed = [float(lambda_formula(ps, n)) for n in range(k)]
    shifted = [float(lambda_pencil(ps, n)) for n in range(k)]

    pairs, extra, missing = pair_eigenvalues(computed, pencil, COMPARE_REL_TOL)
    _, extra_printed, _ = pair_eigenvalues(computed, printed, COMPARE_REL_TOL)
    _, extra_shifted, _ = pair_eigenvalues(computed, shifted, COMPARE_REL_TOL)
    return SpectrumComparison(
        k=k,
        node_count=node_count,
        collocation=computed,
        pencil=pencil,
        formula_printed=printed,
        formula_shifted=shifted,
        pairs_pencil=pairs,
        unmatched_collocation=extra,
        missing_pencil=missing,
        unmatched_vs_printed=extra_printed,
        unmatched_vs_shifted=extra_shifted,
    )
