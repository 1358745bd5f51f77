"""Scalar backends: exact rationals and extended-precision reals.

The library computes over one of two scalar kinds, chosen by the type of
the (alpha, beta) input:

* ``fractions.Fraction`` (ints are promoted) -- every derived quantity
  stays exact; the pencil null-space certification relies on this.
* ``mpmath.mpf`` (floats are promoted) -- extended precision, never below
  DEFAULT_DPS significant digits.

Values of the two kinds are never mixed inside one computation; the
conversion point is always explicit (``to_mpf``).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

from mpmath import mp, mpf

# Working precision (decimal digits) for the extended-precision backend.
DEFAULT_DPS = 50

Scalar = Union[int, Fraction, mpf]


def parse_scalar(text: str) -> Fraction:
    """Parse a CLI/service string ("3", "-1/2", "0.5") into an exact Fraction."""
    return Fraction(str(text).strip())


def as_parameter(value) -> Fraction | mpf:
    """Promote a user-supplied parameter to one of the two scalar kinds.

    int/Fraction/str map to Fraction (exact mode); float/mpf map to mpf.
    """
    if isinstance(value, bool):
        raise TypeError("bool is not a scalar parameter")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        return parse_scalar(value)
    if isinstance(value, float):
        return mpf(value)
    if isinstance(value, mpf):
        return value
    raise TypeError(f"unsupported parameter type {type(value).__name__}")


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction))


def from_integer_pair(num: int, den: int, exact: bool = True):
    """Build num/den in the requested backend."""
    if exact:
        return Fraction(num, den)
    return mpf(num) / den


def is_zero(x) -> bool:
    return x == 0


def compare(x, y) -> int:
    if x < y:
        return -1
    if x > y:
        return 1
    return 0


def to_mpf(x) -> mpf:
    """Convert any library scalar to mpf at the current working precision."""
    if isinstance(x, Fraction):
        return mpf(x.numerator) / x.denominator
    return mpf(x)


def format_scalar(x, digits: int) -> str:
    """Deterministic decimal-string form: Fractions stay exact ("p/q")."""
    if isinstance(x, bool):
        return str(x)
    if isinstance(x, (int, Fraction)):
        return str(Fraction(x))
    with mp.workdps(max(digits + 5, DEFAULT_DPS)):
        return mp.nstr(mpf(x), digits)
