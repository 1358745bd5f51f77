"""Dense univariate polynomial arithmetic over the library scalars.

Coefficients are stored ascending by degree and kept canonical: trailing
zeros are stripped after every operation.  The zero polynomial has an
empty coefficient tuple and degree -inf.  Degrees in this package stay
small (<= ~60), so a dense representation is the right trade-off.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .scalars import to_mpf

NEG_INF = float("-inf")


class Polynomial:
    """Immutable dense polynomial; works over Fraction or mpf coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *_):
        raise AttributeError("Polynomial is immutable")

    # -- construction helpers -------------------------------------------------
    @classmethod
    def zero(cls) -> "Polynomial":
        return cls(())

    @classmethod
    def one(cls) -> "Polynomial":
        return cls((1,))

    @classmethod
    def x(cls) -> "Polynomial":
        return cls((0, 1))

    @classmethod
    def monomial(cls, k: int, coefficient=1) -> "Polynomial":
        return cls((0,) * k + (coefficient,))

    # -- structure -------------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self):
        """Degree as an int, or -inf for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def leading_coefficient(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coefficient(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    # -- arithmetic -------------------------------------------------------------
    def __add__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] = out[i] + v
        return Polynomial(out)

    def __neg__(self) -> "Polynomial":
        return Polynomial(tuple(-v for v in self.coeffs))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial(())
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                out[i + j] = out[i + j] + ai * bj
        return Polynomial(out)

    def scale(self, s) -> "Polynomial":
        return Polynomial(tuple(s * v for v in self.coeffs))

    def differentiate(self) -> "Polynomial":
        return Polynomial(tuple(i * self.coeffs[i] for i in range(1, len(self.coeffs))))

    def evaluate(self, x):
        """Horner evaluation; the result type follows the inputs."""
        acc = x * 0  # zero of the evaluation type
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # -- conversions -------------------------------------------------------------
    def to_mpf(self) -> "Polynomial":
        """Coefficients converted to mpf at the current working precision."""
        return Polynomial(tuple(to_mpf(c) for c in self.coeffs))

    def monic(self) -> "Polynomial":
        lead = self.leading_coefficient()
        return Polynomial(tuple(c / lead for c in self.coeffs))

    # -- text round-trip: "c0 c1 c2 ..." ascending, rationals as "p/q" ----------
    def to_text(self) -> str:
        if not self.coeffs:
            return "0"
        return " ".join(str(Fraction(c)) if isinstance(c, (int, Fraction)) else repr(c)
                        for c in self.coeffs)

    @classmethod
    def from_text(cls, text: str) -> "Polynomial":
        parts = text.split()
        return cls(tuple(Fraction(p) for p in parts))

    # -- dunder plumbing ---------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Polynomial({list(self.coeffs)!r})"


# Operation-style aliases used throughout the package and its tests.
def add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p + q


def mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


def differentiate(p: Polynomial) -> Polynomial:
    return p.differentiate()


def evaluate(p: Polynomial, x):
    return p.evaluate(x)


def from_coeffs(coeffs: Sequence) -> Polynomial:
    return Polynomial(tuple(coeffs))
