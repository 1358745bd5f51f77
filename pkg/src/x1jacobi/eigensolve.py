"""Eigenpolynomials as exact null vectors of the pencil T - lambda B.

Matching the x^(d+1) coefficient of T[y] = lambda B[y] for a polynomial y
of exact degree d forces

    lambda = (d - 1)(d + alpha + beta),

so with the indexing "n-th eigenpolynomial has degree n + 1" the spectrum
is lambda_n = n(alpha + beta + n + 1).  The often-quoted candidate
sequence n(alpha + beta + n) agrees only at n = 0; both closed forms are
kept, ``discover_spectrum`` arbitrates between them, and reports print the
comparison rather than silently picking one.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd, lcm

from mpmath import mp, mpf

from .errors import NullityError
from .params import ParameterSet
from .polycore import Polynomial
from .slform import apply_operator
from .scalars import DEFAULT_DPS, to_mpf


class Normalization(str, Enum):
    MONIC = "monic"
    UNIT_WEIGHTED_NORM = "unit"


@dataclass(frozen=True)
class EigenPair:
    """Index n, its eigenvalue, and the degree-(n+1) eigenpolynomial."""

    n: int
    eigenvalue: object
    poly: Polynomial
    normalization: Normalization


@dataclass(frozen=True)
class PencilMatrix:
    """Columns of A hold coefficients of T[x^j]; columns of B those of (b-x)x^j."""

    A: tuple
    B: tuple
    degree_cap: int


def lambda_formula(ps: ParameterSet, n: int):
    """Candidate closed form n(alpha + beta + n).

    Retained for comparison output; the pencil certifies the shifted
    sequence ``lambda_pencil`` instead (they agree only at n = 0).
    """
    return n * (ps.alpha + ps.beta + n)


def eigenvalue_for_degree(ps: ParameterSet, degree: int):
    """Eigenvalue forced by the leading coefficient for a degree-d solution."""
    return (degree - 1) * (degree + ps.alpha + ps.beta)


def lambda_pencil(ps: ParameterSet, n: int):
    """Eigenvalue of the degree-(n+1) eigenpolynomial: n(alpha + beta + n + 1)."""
    return eigenvalue_for_degree(ps, n + 1)


def build_pencil(ps: ParameterSet, degree_cap: int) -> PencilMatrix:
    """Matrices of shape (degree_cap + 2) x (degree_cap + 1), exact in rational mode."""
    if degree_cap < 1:
        raise ValueError("degree_cap must be >= 1")
    nrows, ncols = degree_cap + 2, degree_cap + 1
    zero = Fraction(0) if ps.is_rational else mpf(0)
    A = [[zero] * ncols for _ in range(nrows)]
    B = [[zero] * ncols for _ in range(nrows)]
    for j in range(ncols):
        image = apply_operator(ps, Polynomial.monomial(j))
        for i, ci in enumerate(image.T.coeffs):
            A[i][j] = ci
        for i, ci in enumerate(image.B.coeffs):
            B[i][j] = ci
    return PencilMatrix(A=tuple(tuple(r) for r in A),
                        B=tuple(tuple(r) for r in B),
                        degree_cap=degree_cap)


# ---------------------------------------------------------------------------
# exact and extended-precision null spaces
# ---------------------------------------------------------------------------

def _rational_nullspace(rows: list[list[Fraction]]) -> list[list[Fraction]]:
    """Null-space basis of a Fraction matrix via fraction-free elimination.

    Rows are cleared to integers, reduced by Bareiss so every intermediate
    entry stays an exact integer minor, and the basis is recovered by back
    substitution over Fractions.
    """
    m = len(rows)
    if m == 0:
        return []
    n = len(rows[0])
    M: list[list[int]] = []
    for row in rows:
        den = 1
        for x in row:
            den = lcm(den, Fraction(x).denominator)
        ints = [int(Fraction(x) * den) for x in row]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if g > 1:
            ints = [v // g for v in ints]
        M.append(ints)

    piv_cols: list[int] = []
    r = 0
    prev = 1
    for c in range(n):
        pr = next((i for i in range(r, m) if M[i][c] != 0), None)
        if pr is None:
            continue
        M[r], M[pr] = M[pr], M[r]
        pivot = M[r][c]
        for i in range(r + 1, m):
            if not any(M[i]):
                continue
            fi = M[i][c]
            for j in range(n):
                M[i][j] = (pivot * M[i][j] - fi * M[r][j]) // prev
        prev = pivot
        piv_cols.append(c)
        r += 1
        if r == m:
            break

    free_cols = [j for j in range(n) if j not in piv_cols]
    basis = []
    for fc in free_cols:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for rr in range(len(piv_cols) - 1, -1, -1):
            pc = piv_cols[rr]
            s = sum((Fraction(M[rr][j]) * v[j] for j in range(pc + 1, n)), Fraction(0))
            v[pc] = -s / M[rr][pc]
        basis.append(v)
    return basis


# Relative singular-value cutoff below which a direction counts as null.
MPF_NULL_CUTOFF = mpf("1e-20")


def _mpf_nullspace(rows, dps: int) -> list[list[mpf]]:
    """Rank-revealing null space via SVD at extended precision."""
    with mp.workdps(dps):
        m, n = len(rows), len(rows[0])
        A = mp.matrix(m, n)
        for i in range(m):
            for j in range(n):
                A[i, j] = to_mpf(rows[i][j])
        _, S, V = mp.svd_r(A, full_matrices=True, compute_uv=True)
        smax = max((S[i] for i in range(S.rows)), default=mpf(0))
        cutoff = MPF_NULL_CUTOFF * smax
        basis = []
        for i in range(n):
            sv = S[i] if i < S.rows else mpf(0)
            if smax == 0 or sv <= cutoff:
                basis.append([V[i, j] for j in range(n)])
        return basis


def nullspace_basis(ps: ParameterSet, rows, dps: int | None = None):
    if ps.is_rational:
        return _rational_nullspace([list(r) for r in rows])
    return _mpf_nullspace([list(r) for r in rows], dps or DEFAULT_DPS)


def eigenpoly_at(ps: ParameterSet, lam, degree_cap: int,
                 dps: int | None = None) -> list[Polynomial]:
    """All polynomials of degree <= degree_cap with T[y] = lam B[y], as a basis."""
    pencil = build_pencil(ps, degree_cap)
    rows = [[pencil.A[i][j] - lam * pencil.B[i][j] for j in range(degree_cap + 1)]
            for i in range(degree_cap + 2)]
    return [Polynomial(tuple(v)) for v in nullspace_basis(ps, rows, dps)]


def solve_eigenpoly(ps: ParameterSet, n: int,
                    normalization: Normalization = Normalization.MONIC,
                    rel_tol=None, dps: int | None = None) -> EigenPair:
    """Construct the n-th eigenpair from the pencil at degree cap n + 1.

    The null space must be one-dimensional; NullityError(k) reports any
    other outcome (eigenvalue mismatch or degenerate parameters).
    """
    lam = lambda_pencil(ps, n)
    basis = eigenpoly_at(ps, lam, n + 1, dps)
    if len(basis) != 1:
        raise NullityError(len(basis),
                           f"nullity {len(basis)} at n = {n} (lambda = {lam})")
    poly = basis[0].monic()
    assert poly.degree() == n + 1
    if normalization is Normalization.UNIT_WEIGHTED_NORM:
        from .quadrature import weighted_norm  # local import: avoids a cycle
        nrm = weighted_norm(ps, poly, rel_tol=rel_tol or mpf("1e-12"))
        poly = poly.to_mpf().scale(1 / nrm)
        # monic input has positive leading coefficient, preserved by nrm > 0
    return EigenPair(n=n, eigenvalue=lam, poly=poly, normalization=normalization)


def discover_spectrum(ps: ParameterSet, degree_cap: int,
                      dps: int | None = None) -> list[tuple]:
    """All (lambda, polynomial) pairs solvable within the degree cap.

    A solution of exact degree k is only possible at the leading-row value
    (k - 1)(k + alpha + beta); enumerating k = 0..degree_cap and taking
    the exact null space at each candidate is therefore exhaustive.
    Candidates whose eigenvalues coincide are merged before solving.
    """
    candidates = []
    for k in range(degree_cap + 1):
        lam = eigenvalue_for_degree(ps, k)
        if not any(lam == c for c in candidates):
            candidates.append(lam)
    found = []
    for lam in candidates:
        for poly in eigenpoly_at(ps, lam, degree_cap, dps):
            found.append((lam, poly.monic()))
    found.sort(key=lambda t: t[0])
    return found


def verify_no_degree_zero(ps: ParameterSet) -> bool:
    """True iff no lambda makes the constant 1 an eigenfunction.

    T[1] = -2a(1 - bx) against lambda (b - x): the constant row gives
    lambda = -2a/b, the linear row demands 2ab = -lambda; together they
    force b^2 = 1, impossible since b > 1.
    """
    image = apply_operator(ps, Polynomial.one())
    t0, t1 = image.T.coefficient(0), image.T.coefficient(1)
    b0, b1 = image.B.coefficient(0), image.B.coefficient(1)
    # consistency of [t0, t1] = lam * [b0, b1]
    if b0 == 0 and b1 == 0:
        return not (t0 == 0 and t1 == 0)
    lam = t0 / b0 if b0 != 0 else t1 / b1
    consistent = (t0 == lam * b0) and (t1 == lam * b1)
    return not consistent
