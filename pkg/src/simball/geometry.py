"""Simplices, faces, and the boundary points of their minimal ellipsoids.

Two arithmetic modes run through everything here. Float mode stores plain
binary doubles and is the fast path for randomized searches. Exact mode
stores `fractions.Fraction` coordinates; squared norms of boundary points
then live in the quadratic-surd class alpha + beta*sqrt(d) with rational
d, so suitability verdicts near the unit sphere are decided exactly. The
mode is a property of the simplex (all coordinates uniform) and operations
infer it unless told otherwise.

Vertex indices are 1-based everywhere a user sees them, matching the
reports and the JSON wire format. Face size is exposed as a dimension
(|J| - 1), never as the index-set cardinality.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from numbers import Rational
from typing import Iterable, NamedTuple, Sequence, Union

import numpy as np

from ._rational import mat_det, sqrt_upper_bound
from .errors import (
    ArgumentError,
    DegenerateSimplexError,
    InternalInvariantError,
    MalformedInputError,
    ModeError,
)
from .surd import QuadSurd

Scalar = Union[float, Fraction]

#: float-mode degeneracy gate: reject |det| < DEGENERACY_RTOL * (max edge)^n
DEGENERACY_RTOL = 1e-9

#: float-mode suitability is inclusive up to ||y||^2 <= 1 + FLOAT_BOUNDARY_TOL
FLOAT_BOUNDARY_TOL = 1e-9


# ---------------------------------------------------------------------------
# core types


@dataclass(frozen=True)
class Simplex:
    """n+1 vertices spanning n-space, stored as tuples of uniform scalars."""

    vertices: tuple[tuple[Scalar, ...], ...]

    def __init__(self, vertices: Sequence[Sequence[Scalar]]):
        rows, exact = _normalize_vertices(vertices)
        object.__setattr__(self, "vertices", rows)
        object.__setattr__(self, "_exact", exact)
        _validate_simplex(self)

    @property
    def n(self) -> int:
        """Ambient dimension."""
        return len(self.vertices[0])

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def is_exact(self) -> bool:
        return self._exact

    @cached_property
    def as_array(self) -> np.ndarray:
        """(n+1, n) float64 view of the vertices; read-only."""
        arr = np.array([[float(x) for x in row] for row in self.vertices], dtype=np.float64)
        arr.setflags(write=False)
        return arr

    @cached_property
    def gram(self) -> tuple[tuple[Fraction, ...], ...]:
        """Exact Gram matrix of the vertices (exact mode only)."""
        if not self.is_exact:
            raise ModeError("exact Gram matrix requires rational coordinates")
        v = self.vertices
        return tuple(
            tuple(sum(a * b for a, b in zip(v[i], v[j])) for j in range(len(v)))
            for i in range(len(v))
        )

    @cached_property
    def gram_sums(self) -> tuple[tuple[Fraction, ...], Fraction]:
        """Row sums and grand total of the exact Gram matrix."""
        g = self.gram
        rows = tuple(sum(r) for r in g)
        return rows, sum(rows)

    def to_float(self) -> "Simplex":
        if not self.is_exact:
            return self
        return Simplex([[float(x) for x in row] for row in self.vertices])

    def to_exact(self) -> "Simplex":
        """Exact dyadic reading of float coordinates (every double is rational)."""
        if self.is_exact:
            return self
        return Simplex([[Fraction(x) for x in row] for row in self.vertices])

    def scaled(self, factor: Scalar) -> "Simplex":
        return Simplex([[x * factor for x in row] for row in self.vertices])

    def __repr__(self):
        mode = "exact" if self.is_exact else "float"
        return f"Simplex(n={self.n}, mode={mode})"


def _normalize_vertices(vertices) -> tuple[tuple[tuple[Scalar, ...], ...], bool]:
    rows = [tuple(row) for row in vertices]
    if not rows or any(len(r) == 0 for r in rows):
        raise ArgumentError("simplex needs at least one vertex with one coordinate")
    flat = [x for row in rows for x in row]
    has_float = any(isinstance(x, (float, np.floating)) for x in flat)
    has_fraction = any(isinstance(x, Fraction) for x in flat)
    if has_float and has_fraction:
        raise ModeError("mixed float and Fraction coordinates; pick one arithmetic mode")
    if has_float:
        out = tuple(tuple(float(x) for x in row) for row in rows)
        return out, False
    if not all(isinstance(x, Rational) for x in flat):
        raise ModeError("coordinates must be floats or rationals")
    out = tuple(tuple(Fraction(x) for x in row) for row in rows)
    return out, True


def _validate_simplex(s: Simplex) -> None:
    n = len(s.vertices[0])
    if any(len(row) != n for row in s.vertices):
        raise ArgumentError("all vertices must have the same dimension")
    if len(s.vertices) != n + 1:
        raise ArgumentError(
            f"simplex in {n}-space needs {n + 1} vertices, got {len(s.vertices)}"
        )
    if s.is_exact:
        edges = [
            [s.vertices[i][k] - s.vertices[n][k] for k in range(n)] for i in range(n)
        ]
        det = mat_det(edges)
        if det == 0:
            raise DegenerateSimplexError("vertices are affinely dependent (det = 0)")
        object.__setattr__(s, "_abs_det", abs(det))
    else:
        arr = s.as_array
        if not np.all(np.isfinite(arr)):
            raise ArgumentError("float coordinates must be finite")
        det = float(np.linalg.det(arr[:n] - arr[n]))
        diffs = arr[:, None, :] - arr[None, :, :]
        max_edge = float(np.sqrt((diffs**2).sum(axis=2).max()))
        if abs(det) < DEGENERACY_RTOL * max_edge**n:
            raise DegenerateSimplexError(
                f"|det| = {abs(det):.3e} below degeneracy threshold "
                f"{DEGENERACY_RTOL * max_edge ** n:.3e}"
            )
        object.__setattr__(s, "_abs_det", abs(det))


@dataclass(frozen=True)
class FaceIndex:
    """A face named by its strictly increasing 1-based vertex index set."""

    indices: tuple[int, ...]

    def __init__(self, indices: Iterable[int]):
        idx = tuple(sorted(int(i) for i in indices))
        if not idx:
            raise ArgumentError("face needs at least one vertex index")
        if len(set(idx)) != len(idx):
            raise ArgumentError(f"duplicate vertex indices in {idx}")
        if idx[0] < 1:
            raise ArgumentError(f"vertex indices are 1-based, got {idx}")
        object.__setattr__(self, "indices", idx)

    @property
    def dim(self) -> int:
        return len(self.indices) - 1

    def __len__(self):
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)

    def __contains__(self, v: int) -> bool:
        return v in self.indices

    def __repr__(self):
        return f"FaceIndex{self.indices}"


FaceLike = Union[FaceIndex, Iterable[int]]


def _as_face(J: FaceLike) -> FaceIndex:
    return J if isinstance(J, FaceIndex) else FaceIndex(J)


def _check_face(s: Simplex, face: FaceIndex, max_size: int) -> None:
    if face.indices[-1] > s.num_vertices:
        raise ArgumentError(
            f"vertex index {face.indices[-1]} out of range 1..{s.num_vertices}"
        )
    if len(face) > max_size:
        raise ArgumentError(
            f"face with {len(face)} vertices has no opposite face in {s.n}-space"
        )


class FaceRatios(NamedTuple):
    r: float
    rho: float
    r_prime: float | None
    rho_prime: float | None


@dataclass(frozen=True)
class FaceGeometry:
    """Derived data for one face: centroids, ratios, and the boundary point.

    `y` is where the ray from the face centroid g through the simplex
    centroid c meets the boundary of the minimal ellipsoid on the far
    side: y = (1 + rho) c - rho g. In exact mode its coordinates are
    quadratic surds over the rational radicand rho^2.
    """

    face: FaceIndex
    n: int
    g: tuple[Scalar, ...]
    h: tuple[Scalar, ...]
    c: tuple[Scalar, ...]
    r: Scalar | QuadSurd
    rho: Scalar | QuadSurd
    r_prime: Scalar | QuadSurd | None
    rho_prime: Scalar | QuadSurd | None
    y: tuple


# ---------------------------------------------------------------------------
# operations


def centroid(s: Simplex) -> tuple[Scalar, ...]:
    """Center of gravity (1/(n+1)) * sum of vertices; also the center of the
    minimal ellipsoid."""
    k = s.num_vertices
    if s.is_exact:
        return tuple(sum(col) / k for col in zip(*s.vertices))
    return tuple(float(x) for x in s.as_array.mean(axis=0))


def rho_sq(n: int, m: int) -> Fraction:
    """Exact rho^2 = m*n/(n - m + 1) for a face with m vertices."""
    if not 1 <= m <= n:
        raise ArgumentError(f"need 1 <= m <= n, got m={m}, n={n}")
    return Fraction(m * n, n - m + 1)


def rho_prime_sq(n: int, m: int) -> Fraction:
    """Exact rho'^2 = (m+1)*n/(n - m), defined for m <= n - 1."""
    if not 1 <= m <= n - 1:
        raise ArgumentError(f"need 1 <= m <= n-1, got m={m}, n={n}")
    return Fraction((m + 1) * n, n - m)


def face_ratios(n: int, m: int) -> FaceRatios:
    """Distance ratios of a face with m vertices in the regular n-simplex.

    r = sqrt((n-m+1)/(m n)) is the centroid-to-face-centroid distance over
    the circumradius, rho = 1/r. The primed pair is the same thing for a
    face with one more vertex; it does not exist for m = n.
    """
    d = rho_sq(n, m)
    r = math.sqrt(float(1 / d))
    rho = math.sqrt(float(d))
    if m == n:
        return FaceRatios(r, rho, None, None)
    dp = rho_prime_sq(n, m)
    return FaceRatios(r, rho, math.sqrt(float(1 / dp)), math.sqrt(float(dp)))


def face_geometry(s: Simplex, J: FaceLike) -> FaceGeometry:
    """Centroids g, h, c, the ratios, and the boundary point y for face J."""
    face = _as_face(J)
    n = s.n
    _check_face(s, face, n)
    m = len(face)
    inside = [i - 1 for i in face.indices]
    outside = [i for i in range(n + 1) if (i + 1) not in face.indices]

    if s.is_exact:
        v = s.vertices
        g = tuple(sum(v[i][k] for i in inside) / m for k in range(n))
        h = tuple(sum(v[i][k] for i in outside) / (n + 1 - m) for k in range(n))
        c = tuple(sum(v[i][k] for i in range(n + 1)) / (n + 1) for k in range(n))
        if all(ck == gk for ck, gk in zip(c, g)):
            raise InternalInvariantError(
                "face centroid equals simplex centroid on a nondegenerate simplex"
            )
        d = rho_sq(n, m)
        rho = QuadSurd(0, 1, d)
        r = QuadSurd(0, 1, 1 / d)
        if m < n:
            dp = rho_prime_sq(n, m)
            rho_p, r_p = QuadSurd(0, 1, dp), QuadSurd(0, 1, 1 / dp)
        else:
            rho_p = r_p = None
        y = tuple(QuadSurd(ck, ck - gk, d) for ck, gk in zip(c, g))
        return FaceGeometry(face, n, g, h, c, r, rho, r_p, rho_p, y)

    arr = s.as_array
    g = arr[inside].mean(axis=0)
    h = arr[outside].mean(axis=0)
    c = arr.mean(axis=0)
    if float(np.abs(c - g).max()) == 0.0:
        raise InternalInvariantError(
            "face centroid equals simplex centroid on a nondegenerate simplex"
        )
    ratios = face_ratios(n, m)
    y = (1.0 + ratios.rho) * c - ratios.rho * g
    return FaceGeometry(
        face,
        n,
        tuple(g.tolist()),
        tuple(h.tolist()),
        tuple(c.tolist()),
        ratios.r,
        ratios.rho,
        ratios.r_prime,
        ratios.rho_prime,
        tuple(y.tolist()),
    )


def _y_norm_sq_parts(gram, rows, total, inside, n) -> QuadSurd:
    k = n + 1
    m = len(inside)
    cc = total / (k * k)
    cg = sum(rows[i] for i in inside) / (k * m)
    gg = sum((Fraction(gram[i][j]) for i in inside for j in inside), Fraction(0)) / (m * m)
    d = rho_sq(n, m)
    alpha = cc + d * (cc - 2 * cg + gg)
    beta = 2 * (cc - cg)
    return QuadSurd(alpha, beta, d)


def y_norm_sq_from_gram(gram: Sequence[Sequence[Fraction]], J: FaceLike) -> QuadSurd:
    """||y_J||^2 = alpha + beta*sqrt(d) from an exact Gram matrix alone.

    alpha = ||c||^2 + rho^2 ||c - g||^2, beta = 2 <c, c - g>, d = rho^2.
    Everything reduces to sums of Gram entries, so this also serves
    simplices known only through their inner products (the regular
    simplex has rational Gram but irrational coordinates).
    """
    face = _as_face(J)
    k = len(gram)
    n = k - 1
    if face.indices[-1] > k:
        raise ArgumentError(f"vertex index {face.indices[-1]} out of range 1..{k}")
    if len(face) > n:
        raise ArgumentError("face must leave at least one opposite vertex")
    rows = [sum((Fraction(gram[i][j]) for j in range(k)), Fraction(0)) for i in range(k)]
    total = sum(rows)
    inside = [i - 1 for i in face.indices]
    return _y_norm_sq_parts(gram, rows, total, inside, n)


def y_norm_sq_surd(s: Simplex, J: FaceLike) -> QuadSurd:
    """Exact squared norm of the boundary point for face J (exact mode only)."""
    if not s.is_exact:
        raise ModeError("exact squared norm needs rational coordinates; "
                        "use to_exact()/rationalize_to_ball first")
    face = _as_face(J)
    _check_face(s, face, s.n)
    rows, total = s.gram_sums
    return _y_norm_sq_parts(s.gram, rows, total, [i - 1 for i in face.indices], s.n)


def y_norm_sq_float(s: Simplex, J: FaceLike) -> float:
    """Float squared norm of the boundary point for face J."""
    face = _as_face(J)
    n = s.n
    _check_face(s, face, n)
    arr = s.as_array
    inside = [i - 1 for i in face.indices]
    g = arr[inside].mean(axis=0)
    c = arr.mean(axis=0)
    rho = math.sqrt(float(rho_sq(n, len(face))))
    y = (1.0 + rho) * c - rho * g
    return float(y @ y)


def is_suitable(
    s: Simplex,
    J: FaceLike,
    mode: str | None = None,
    tol: float = FLOAT_BOUNDARY_TOL,
) -> bool:
    """Whether the boundary point of face J lies in the closed unit ball.

    Exact mode decides ||y||^2 <= 1 by surd comparison; float mode allows
    ||y||^2 <= 1 + tol so boundary-tight cases (the regular simplex attains
    equality on every face) are not lost to rounding.
    """
    if mode is None:
        mode = "exact" if s.is_exact else "float"
    if mode == "exact":
        return y_norm_sq_surd(s, J).compare(1) <= 0
    if mode == "float":
        return y_norm_sq_float(s, J) <= 1.0 + tol
    raise ArgumentError(f"unknown mode {mode!r}; expected 'exact' or 'float'")


def simplex_volume_det(obj: Simplex | Sequence[Sequence[Scalar]]) -> Scalar:
    """|det of the edge matrix| / n!; zero exactly for degenerate input.

    Accepts a Simplex or a raw (n+1) x n point array, so it can measure
    degenerate vertex sets that the Simplex constructor rejects.
    """
    if isinstance(obj, Simplex):
        return obj._abs_det / math.factorial(obj.n)
    rows = [tuple(row) for row in obj]
    n = len(rows[0]) if rows else 0
    if n == 0 or any(len(r) != n for r in rows) or len(rows) != n + 1:
        raise ArgumentError("expected n+1 points of dimension n")
    if any(isinstance(x, (float, np.floating)) for row in rows for x in row):
        arr = np.array(rows, dtype=np.float64)
        return float(abs(np.linalg.det(arr[:n] - arr[n]))) / math.factorial(n)
    edges = [[Fraction(rows[i][k]) - Fraction(rows[n][k]) for k in range(n)] for i in range(n)]
    return abs(mat_det(edges)) / math.factorial(n)


# ---------------------------------------------------------------------------
# constructions and conversions


def regular_simplex(n: int) -> Simplex:
    """Regular simplex inscribed in the unit sphere (float coordinates).

    Built from the n+1 scaled basis-vector offsets in (n+1)-space and
    reflected into the hyperplane orthogonal to the all-ones vector, so
    pairwise inner products are -1/n up to rounding.
    """
    if n < 1:
        raise ArgumentError("dimension must be >= 1")
    k = n + 1
    pts = (np.eye(k) - np.full((k, k), 1.0 / k)) * math.sqrt(k / n)
    # Householder reflection taking ones/sqrt(k) to the last basis vector
    v = np.full(k, 1.0 / math.sqrt(k))
    v[-1] -= 1.0
    v /= math.sqrt(v @ v)
    pts = pts - 2.0 * np.outer(pts @ v, v)
    return Simplex(pts[:, :n].tolist())


@lru_cache(maxsize=256)
def rationalize_to_ball(s: Simplex) -> Simplex:
    """Exact rational copy of s, scaled into the closed unit ball if needed.

    Float coordinates are read exactly as dyadic rationals. If the largest
    vertex norm exceeds 1 (sampling noise puts inscribed vertices a few
    ulps outside), every vertex is multiplied by a rational factor just
    below 1/sqrt(max ||x||^2), certifying membership in the ball exactly.
    """
    exact = s.to_exact()
    max_sq = max(sum(x * x for x in row) for row in exact.vertices)
    if max_sq <= 1:
        return exact
    return exact.scaled(1 / sqrt_upper_bound(max_sq))


# ---------------------------------------------------------------------------
# wire format


def simplex_to_json_dict(s: Simplex) -> dict:
    """{"vertices": rows}; floats stay numbers, rationals become "p/q" strings."""
    if s.is_exact:
        rows = [[str(x) for x in row] for row in s.vertices]
    else:
        rows = [list(row) for row in s.vertices]
    return {"vertices": rows}


def simplex_from_json_dict(obj) -> Simplex:
    """Parse the wire format; numbers select float mode, "p/q" strings exact.

    Mixing numbers and strings anywhere in one simplex is rejected.
    """
    if not isinstance(obj, dict) or "vertices" not in obj:
        raise MalformedInputError('expected an object with a "vertices" field')
    rows = obj["vertices"]
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise MalformedInputError('"vertices" must be a non-empty list of rows')
    flat = [x for row in rows for x in row]
    if not flat:
        raise MalformedInputError("vertex rows must be non-empty")
    if all(isinstance(x, str) for x in flat):
        try:
            parsed = [[Fraction(x) for x in row] for row in rows]
        except (ValueError, ZeroDivisionError) as e:
            raise MalformedInputError(f"bad rational entry: {e}") from e
    elif all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in flat):
        parsed = [[float(x) for x in row] for row in rows]
        if not all(math.isfinite(x) for row in parsed for x in row):
            raise MalformedInputError("float entries must be finite")
    else:
        raise MalformedInputError(
            "mixed numeric and string entries; one arithmetic mode per simplex"
        )
    try:
        return Simplex(parsed)
    except ArgumentError as e:
        raise MalformedInputError(str(e)) from e


def simplex_digest(s: Simplex) -> str:
    """Stable sha256 of the canonical wire form (17 significant digits)."""
    if s.is_exact:
        rows = [[str(x) for x in row] for row in s.vertices]
    else:
        rows = [[format(x, ".17g") for x in row] for row in s.vertices]
    blob = json.dumps(rows, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()
