"""Closed-form minimal norms of linear interpolation projectors on the ball.

The minimum over node configurations is attained at the vertices of a
regular inscribed simplex and reduces to a one-dimensional maximization of

    psi(t) = (2 sqrt(n)/(n+1)) sqrt(t (n+1-t)) + |1 - 2t/(n+1)|

over integer t; the continuous maximizer is (n+1)/2 - sqrt(n+1)/2, so only
its floor a_n and a_n + 1 compete. The winning integer k_n is the face
size that matters downstream in the suitable-face machinery.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ArgumentError

#: psi(a_n) and psi(a_n + 1) closer than this count as a tie
TIE_TOL = 1e-12


def psi(n: int, t: float) -> float:
    """(2 sqrt(n)/(n+1)) * sqrt(t(n+1-t)) + |1 - 2t/(n+1)| for 0 <= t <= n+1."""
    if n < 1:
        raise ArgumentError(f"dimension must be >= 1, got {n}")
    if not 0 <= t <= n + 1:
        raise ArgumentError(f"t must be in [0, {n + 1}], got {t}")
    return (2.0 * math.sqrt(n) / (n + 1)) * math.sqrt(t * (n + 1 - t)) + abs(
        1.0 - 2.0 * t / (n + 1)
    )


def floor_half_n1_minus_sqrt(n: int) -> int:
    """Exact floor((n+1)/2 - sqrt(n+1)/2) using only integer arithmetic.

    The largest integer j with (n+1-2j)^2 >= n+1 (and 2j <= n+1); floating
    floor would misclassify near-integer arguments, so it is avoided.
    """
    N = n + 1
    j = (N - math.isqrt(N)) // 2
    while (N - 2 * (j + 1)) >= 0 and (N - 2 * (j + 1)) ** 2 >= N:
        j += 1
    while j > 0 and (N - 2 * j) ** 2 < N:
        j -= 1
    return j


@dataclass(frozen=True)
class ProjectorNorm:
    """Minimal projector norm data for one dimension.

    theta = max(psi(a_n), psi(a_n+1)) and sqrt(n) <= theta <= sqrt(n+1);
    k_n is the maximizer, with exact ties flagged and resolved to a_n.
    """

    n: int
    a_n: int
    psi_at_a: float
    psi_at_a_plus_1: float
    theta: float
    k_n: int
    tie: bool


def projector_norm(n: int) -> ProjectorNorm:
    """theta_n and the witnessing integer for dimension n."""
    if n < 1:
        raise ArgumentError(f"dimension must be >= 1, got {n}")
    a = floor_half_n1_minus_sqrt(n)
    pa = psi(n, a)
    pa1 = psi(n, a + 1)
    tie = abs(pa - pa1) <= TIE_TOL
    if tie or pa >= pa1:
        k = a
    else:
        k = a + 1
    return ProjectorNorm(
        n=n,
        a_n=a,
        psi_at_a=pa,
        psi_at_a_plus_1=pa1,
        theta=max(pa, pa1),
        k_n=k,
        tie=tie,
    )


def theta_table(max_n: int) -> list[ProjectorNorm]:
    """projector_norm for n = 1..max_n."""
    if max_n < 1:
        raise ArgumentError(f"max_n must be >= 1, got {max_n}")
    return [projector_norm(n) for n in range(1, max_n + 1)]
