"""Small exact-arithmetic helpers: Fraction linear algebra and square roots.

Everything here operates on `fractions.Fraction` and is only used on the
desk-scale matrices this package deals with (n up to a few dozen), so the
plain O(n^3) algorithms are fine.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

from .errors import ArgumentError, DegenerateSimplexError


def exact_sqrt(x: Fraction) -> Fraction | None:
    """Return sqrt(x) as a Fraction if x is a perfect rational square, else None."""
    if x < 0:
        raise ArgumentError(f"square root of negative rational {x}")
    p, q = x.numerator, x.denominator
    sp, sq = isqrt(p), isqrt(q)
    if sp * sp == p and sq * sq == q:
        return Fraction(sp, sq)
    return None


def sqrt_upper_bound(x: Fraction, scale: int = 10**18) -> Fraction:
    """A rational u >= sqrt(x) with u - sqrt(x) <= 1/scale."""
    if x < 0:
        raise ArgumentError(f"square root of negative rational {x}")
    p, q = x.numerator, x.denominator
    return Fraction(isqrt(p * scale * scale // q) + 1, scale)


def squarefree_decompose(v: int) -> tuple[int, int]:
    """Write v = s*s * d0 with d0 squarefree; returns (s, d0). v must be > 0."""
    if v <= 0:
        raise ArgumentError(f"squarefree decomposition of nonpositive {v}")
    s, d0 = 1, 1
    f = 2
    while f * f <= v:
        if v % f == 0:
            e = 0
            while v % f == 0:
                v //= f
                e += 1
            s *= f ** (e // 2)
            if e % 2:
                d0 *= f
        f += 1 if f == 2 else 2
    return s, d0 * v


def mat_det(rows: list[list[Fraction]]) -> Fraction:
    """Determinant by fraction-preserving Gaussian elimination."""
    n = len(rows)
    a = [list(r) for r in rows]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            if a[r][col] == 0:
                continue
            factor = a[r][col] * inv
            for c in range(col, n):
                a[r][c] -= factor * a[col][c]
    return det


def mat_inv(rows: list[list[Fraction]]) -> list[list[Fraction]]:
    """Inverse by Gauss-Jordan elimination; raises on singular input."""
    n = len(rows)
    a = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise DegenerateSimplexError("singular matrix in exact inversion")
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                factor = a[r][col]
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def mat_vec(rows: list[list[Fraction]], v: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
    return tuple(sum(r[j] * v[j] for j in range(len(v))) for r in rows)
