"""Exact quadratic-surd arithmetic: numbers of the form alpha + beta*sqrt(d).

This is the value class of the squared norms produced by the face/boundary
geometry on rational simplices: the only irrationality is a single square
root whose radicand d is a known positive rational. Keeping (alpha, beta, d)
as Fractions lets every comparison against a rational threshold be decided
exactly, by sign analysis plus one squaring, with no floating rounding.

Arithmetic is closed within one radicand family: surds with the same d (or
with a rational value) combine freely. Mixing two genuinely irrational surds
with different squarefree radicands is refused rather than approximated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from ._rational import exact_sqrt, squarefree_decompose
from .errors import ArgumentError, ModeError

_CANONICAL_LIMIT = 10**12


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, Rational):
        return Fraction(x)
    raise ModeError(f"expected a rational scalar, got {type(x).__name__}")


@dataclass(frozen=True)
class QuadSurd:
    """The real number alpha + beta * sqrt(d), with rational alpha, beta, d > 0."""

    alpha: Fraction
    beta: Fraction
    d: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "alpha", _as_fraction(self.alpha))
        object.__setattr__(self, "beta", _as_fraction(self.beta))
        object.__setattr__(self, "d", _as_fraction(self.d))
        if self.d <= 0:
            raise ArgumentError(f"radicand must be positive, got {self.d}")

    # -- conversions ---------------------------------------------------

    def __float__(self) -> float:
        return float(self.alpha) + float(self.beta) * math.sqrt(float(self.d))

    @property
    def is_rational(self) -> bool:
        return self.beta == 0 or exact_sqrt(self.d) is not None

    def as_fraction(self) -> Fraction:
        """Exact rational value; ModeError if the value is irrational."""
        if self.beta == 0:
            return self.alpha
        root = exact_sqrt(self.d)
        if root is None:
            raise ModeError(f"{self!r} is irrational")
        return self.alpha + self.beta * root

    def canonical(self) -> "QuadSurd":
        """Equivalent surd with squarefree integer radicand (rationals get d=1).

        Only needed for cross-family operations; the small radicands this
        package produces (m*n-style ratios) factor instantly.
        """
        if self.beta == 0:
            return QuadSurd(self.alpha, Fraction(0), Fraction(1))
        root = exact_sqrt(self.d)
        if root is not None:
            return QuadSurd(self.alpha + self.beta * root, Fraction(0), Fraction(1))
        p, q = self.d.numerator, self.d.denominator
        if p * q > _CANONICAL_LIMIT:
            return self
        s, d0 = squarefree_decompose(p * q)
        # sqrt(p/q) = s*sqrt(d0)/q
        return QuadSurd(self.alpha, self.beta * Fraction(s, q), Fraction(d0))

    # -- ring operations (closed for a fixed radicand) ------------------

    def _aligned(self, other) -> "tuple[QuadSurd, QuadSurd] | None":
        """Bring self and other onto one radicand; None if other is foreign."""
        if isinstance(other, Rational):
            return self, QuadSurd(_as_fraction(other), Fraction(0), self.d)
        if not isinstance(other, QuadSurd):
            return None
        if other.d == self.d:
            return self, other
        if other.beta == 0:
            return self, QuadSurd(other.alpha, Fraction(0), self.d)
        if self.beta == 0:
            return QuadSurd(self.alpha, Fraction(0), other.d), other
        a, b = self.canonical(), other.canonical()
        if a.d == b.d:
            return a, b
        raise ArgumentError(
            f"incompatible radicands {self.d} and {other.d}; "
            "surd arithmetic is closed only within one sqrt family"
        )

    def __add__(self, other):
        pair = self._aligned(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return QuadSurd(a.alpha + b.alpha, a.beta + b.beta, a.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadSurd(-self.alpha, -self.beta, self.d)

    def __sub__(self, other):
        pair = self._aligned(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return QuadSurd(a.alpha - b.alpha, a.beta - b.beta, a.d)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        pair = self._aligned(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return QuadSurd(
            a.alpha * b.alpha + a.beta * b.beta * a.d,
            a.alpha * b.beta + a.beta * b.alpha,
            a.d,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Rational):
            q = _as_fraction(other)
            return QuadSurd(self.alpha / q, self.beta / q, self.d)
        return NotImplemented

    # -- exact comparisons ----------------------------------------------

    def sign(self) -> int:
        """Exact sign of the value: -1, 0, or +1."""
        a, b, d = self.alpha, self.beta, self.d
        if b == 0:
            return -1 if a < 0 else (0 if a == 0 else 1)
        if b > 0 and a >= 0:
            return 1
        if b < 0 and a <= 0:
            return -1
        # opposite signs: compare a^2 against b^2 d, one squaring, no rounding
        lhs, rhs = a * a, b * b * d
        if lhs == rhs:
            return 0
        # |a| > |b|sqrt(d) means the rational part wins
        return (1 if a > 0 else -1) if lhs > rhs else (1 if b > 0 else -1)

    def compare(self, threshold) -> int:
        """Exact ordering of the value against a rational threshold (-1/0/+1)."""
        return (self - _as_fraction(threshold)).sign()

    def _cmp_any(self, other) -> int:
        if isinstance(other, Rational):
            return self.compare(other)
        if isinstance(other, QuadSurd):
            a, b = self._aligned(other)
            return QuadSurd(a.alpha - b.alpha, a.beta - b.beta, a.d).sign()
        raise ModeError(f"cannot compare QuadSurd with {type(other).__name__}")

    def __eq__(self, other):
        if isinstance(other, (Rational, QuadSurd)):
            try:
                return self._cmp_any(other) == 0
            except ArgumentError:
                return False  # different squarefree radicands never coincide
        return NotImplemented

    def __hash__(self):
        c = self.canonical()
        return hash((c.alpha, c.beta, c.d))

    def __lt__(self, other):
        return self._cmp_any(other) < 0

    def __le__(self, other):
        return self._cmp_any(other) <= 0

    def __gt__(self, other):
        return self._cmp_any(other) > 0

    def __ge__(self, other):
        return self._cmp_any(other) >= 0

    def __repr__(self):
        return f"QuadSurd({self.alpha} + {self.beta}*sqrt({self.d}))"


def surd_cmp(q: QuadSurd, threshold) -> int:
    """Exact ordering of alpha + beta*sqrt(d) versus a rational: -1, 0, or +1."""
    return q.compare(threshold)
