"""Parameter validation and the Case 1 / Case 2 taxonomy.

Admissible parameters: alpha, beta in (-1, inf), alpha != beta, with equal
nonzero signs.  The two admissible orderings are

* Case 1:  beta > alpha > 0   (a > 0, b > 1, c > 1)
* Case 2:  -1 < beta < alpha < 0   (a < 0, b > 1, c < -1)

with a = (beta - alpha)/2, b = (beta + alpha)/(beta - alpha), c = b + 1/a.
In both cases b > 1, so (x - b)^2 >= (1 - b)^2 > 0 on [-1, 1].
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import CaseError, EqualityError, RangeError, SignError
from .scalars import as_parameter, is_exact


class Case(str, Enum):
    CASE1 = "Case1"
    CASE2 = "Case2"


@dataclass(frozen=True)
class ParameterSet:
    """Validated (alpha, beta) with the derived constants and case tag.

    Instances come from :func:`validate`; all fields share one scalar kind
    (Fraction in exact mode, mpf otherwise) except the tag.
    """

    alpha: object
    beta: object
    a: object
    b: object
    c: object
    case_tag: Case

    @property
    def is_rational(self) -> bool:
        return is_exact(self.alpha) and is_exact(self.beta)

    def __repr__(self):  # keep error messages and logs readable
        return (f"ParameterSet(alpha={self.alpha}, beta={self.beta}, "
                f"case={self.case_tag.value})")


def validate(alpha, beta) -> ParameterSet:
    """Check (alpha, beta), derive (a, b, c) and assign the case tag.

    Raises RangeError, EqualityError, SignError or CaseError naming the
    violated constraint.  Accepts int/Fraction/str for the exact backend
    and float/mpf for the extended-precision one.
    """
    alpha = as_parameter(alpha)
    beta = as_parameter(beta)
    for name, v in (("alpha", alpha), ("beta", beta)):
        if v <= -1:
            raise RangeError(f"{name} = {v} violates {name} > -1")
    if alpha == beta:
        raise EqualityError(f"alpha = beta = {alpha} violates alpha != beta")
    if alpha == 0 or beta == 0:
        raise SignError("sgn(alpha) = sgn(beta) requires both nonzero")
    if (alpha > 0) != (beta > 0):
        raise SignError(f"sgn(alpha) != sgn(beta) for alpha = {alpha}, beta = {beta}")

    if alpha > 0:
        if not beta > alpha:
            raise CaseError(f"positive parameters require beta > alpha > 0, "
                            f"got alpha = {alpha}, beta = {beta}")
        tag = Case.CASE1
    else:
        if not beta < alpha:
            raise CaseError(f"negative parameters require -1 < beta < alpha < 0, "
                            f"got alpha = {alpha}, beta = {beta}")
        tag = Case.CASE2

    a = (beta - alpha) / 2
    b = (beta + alpha) / (beta - alpha)
    c = b + 1 / a
    return ParameterSet(alpha=alpha, beta=beta, a=a, b=b, c=c, case_tag=tag)


def case_of(ps: ParameterSet) -> Case:
    """Case1 iff beta > alpha > 0; Case2 iff -1 < beta < alpha < 0."""
    if ps.beta > ps.alpha > 0:
        return Case.CASE1
    return Case.CASE2
