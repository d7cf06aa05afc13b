"""Minimal enclosing ellipsoids: closed form for simplices, Khachiyan oracle.

The closed form exploits that the target ellipsoid is the affine image of
the regular simplex's circumscribed ball: for regular inscribed vertices
the second-moment sum is ((n+1)/n) I, so mapping through an affine T gives
shape matrix [ (n/(n+1)) * sum (x_i - c)(x_i - c)^T ]^{-1} about the
centroid c. The iterative solver (`mvee`, coordinate ascent on the dual
weights, Khachiyan's algorithm) stays deliberately independent of that
derivation and acts as the correctness oracle for it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from ._rational import mat_inv, mat_vec
from .errors import (
    ArgumentError,
    ConvergenceError,
    DegenerateSimplexError,
    RankError,
)
from .geometry import Scalar, Simplex, centroid

#: Khachiyan defaults: stop when the largest dual violation drops below eps
MVEE_EPS = 1e-7
MVEE_MAX_ITER = 100_000


def ball_volume(n: int) -> float:
    """Volume of the n-dimensional unit ball."""
    return math.pi ** (n / 2) / math.gamma(n / 2 + 1)


@dataclass(frozen=True)
class Ellipsoid:
    """Ellipsoid { x : (x-c)^T A (x-c) <= 1 } with symmetric PD shape A."""

    center: tuple[Scalar, ...]
    shape: tuple[tuple[Scalar, ...], ...]

    @property
    def n(self) -> int:
        return len(self.center)

    @property
    def is_exact(self) -> bool:
        return isinstance(self.center[0], Fraction)

    @cached_property
    def center_array(self) -> np.ndarray:
        return np.array([float(x) for x in self.center])

    @cached_property
    def shape_array(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.shape])

    @cached_property
    def volume(self) -> float:
        """vol(unit ball) / sqrt(det A)."""
        if self.is_exact:
            from ._rational import mat_det

            det = float(mat_det([list(r) for r in self.shape]))
        else:
            det = float(np.linalg.det(self.shape_array))
        if det <= 0:
            raise ArgumentError("shape matrix is not positive definite")
        return ball_volume(self.n) / math.sqrt(det)


def membership_margin(e: Ellipsoid, x) -> Scalar:
    """(x-c)^T A (x-c); <= 1 means x is inside or on the boundary.

    Exact when both the ellipsoid and the point are rational.
    """
    coords = tuple(x)
    if len(coords) != e.n:
        raise ArgumentError(f"point dimension {len(coords)} != ellipsoid dimension {e.n}")
    if e.is_exact and all(isinstance(c, (int, Fraction)) for c in coords):
        v = tuple(Fraction(c) - ec for c, ec in zip(coords, e.center))
        av = mat_vec([list(r) for r in e.shape], v)
        return sum(vi * avi for vi, avi in zip(v, av))
    v = np.array([float(c) for c in coords]) - e.center_array
    return float(v @ e.shape_array @ v)


def minimal_ellipsoid(s: Simplex) -> Ellipsoid:
    """Smallest-volume ellipsoid containing the simplex, in closed form.

    Centered at the centroid; every vertex sits exactly on the boundary.
    Exact simplices yield an exact rational shape matrix.
    """
    n = s.n
    c = centroid(s)
    if s.is_exact:
        m = [[Fraction(0)] * n for _ in range(n)]
        for row in s.vertices:
            dv = [row[k] - c[k] for k in range(n)]
            for i in range(n):
                for j in range(i, n):
                    m[i][j] += dv[i] * dv[j]
        scale = Fraction(n, n + 1)
        for i in range(n):
            for j in range(i, n):
                m[i][j] *= scale
                m[j][i] = m[i][j]
        shape = mat_inv(m)
        return Ellipsoid(tuple(c), tuple(tuple(row) for row in shape))
    arr = s.as_array
    dv = arr - arr.mean(axis=0)
    m = (n / (n + 1)) * (dv.T @ dv)
    try:
        np.linalg.cholesky(m)  # PD gate; failure means a degenerate simplex
    except np.linalg.LinAlgError as e:
        raise DegenerateSimplexError("second-moment matrix is not positive definite") from e
    shape = np.linalg.solve(m, np.eye(n))
    shape = (shape + shape.T) / 2.0
    return Ellipsoid(tuple(float(x) for x in c), tuple(tuple(row.tolist()) for row in shape))


def mvee(points, eps: float = MVEE_EPS, max_iter: int = MVEE_MAX_ITER) -> Ellipsoid:
    """Minimum-volume enclosing ellipsoid of a point set (Khachiyan).

    Coordinate ascent on the dual weights u: lift points to q_i = (p_i, 1),
    repeatedly shift mass onto the point with the largest leverage
    M_i = q_i^T V(u)^{-1} q_i until max M_i <= (1 + eps)(n + 1). The
    returned ellipsoid contains all points and has volume within a factor
    (1 + eps)^n of optimal. Float-only; this is the oracle side of the
    closed form above, so it must not share its derivation.
    """
    P = np.asarray(points, dtype=np.float64)
    if P.ndim != 2:
        raise ArgumentError("points must be a 2-D array-like")
    N, d = P.shape
    if eps <= 0:
        raise ArgumentError("eps must be positive")
    Q = np.hstack([P, np.ones((N, 1))])
    if np.linalg.matrix_rank(Q) < d + 1:
        raise RankError("points do not affinely span the ambient space")
    u = np.full(N, 1.0 / N)
    for _ in range(max_iter):
        V = Q.T @ (u[:, None] * Q)
        M = np.einsum("ij,jk,ik->i", Q, np.linalg.inv(V), Q)
        j = int(np.argmax(M))
        violation = M[j] / (d + 1) - 1.0
        if violation <= eps:
            return _ellipsoid_from_weights(P, u, d)
        step = (M[j] - d - 1.0) / ((d + 1.0) * (M[j] - 1.0))
        u *= 1.0 - step
        u[j] += step
    raise ConvergenceError(
        f"no convergence within {max_iter} iterations (eps={eps})",
        last_iterate=_ellipsoid_from_weights(P, u, d),
    )


def _ellipsoid_from_weights(P: np.ndarray, u: np.ndarray, d: int) -> Ellipsoid:
    c = u @ P
    cov = P.T @ (u[:, None] * P) - np.outer(c, c)
    shape = np.linalg.inv(cov) / d
    shape = (shape + shape.T) / 2.0
    return Ellipsoid(tuple(c.tolist()), tuple(tuple(row.tolist()) for row in shape))
