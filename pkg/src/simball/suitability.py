"""Suitable-face machinery: existence, extension, and the proof-side identities.

A face is suitable when its boundary point lands in the closed unit ball.
Two facts are machine-checked throughout: every simplex in the ball has a
suitable face of each dimension (existence), and a suitable vertex extends
to a suitable face of every dimension (extension). Failed searches are
never swallowed: they escalate to exact rational arithmetic and, only if
the failure survives, surface as a structured critical finding, since a
genuine violation would contradict a proved statement and therefore means
an implementation bug.

Face enumeration is exhaustive over lexicographically ordered index sets,
so "first found" answers are deterministic. Intended scale is n <= 12.
All functions are pure; enumeration arrays are cached per (n, size).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .errors import ArgumentError, InternalInvariantError, NoSuitableFaceError
from .geometry import (
    FLOAT_BOUNDARY_TOL,
    FaceIndex,
    FaceLike,
    Simplex,
    _as_face,
    centroid,
    is_suitable,
    rationalize_to_ball,
    rho_prime_sq,
    rho_sq,
    simplex_digest,
    y_norm_sq_surd,
)
from .surd import QuadSurd

#: float inner-product slack for the suitable-vertex selection
VERTEX_CONDITION_TOL = 1e-12

#: |  ||y||^2 - 1 | below this means "too close to call in float": go exact
NEAR_BOUNDARY_EPS = 1e-6

#: float tolerance on ||x_i|| = 1 for inscribed-simplex preconditions
INSCRIBED_TOL = 1e-9


# ---------------------------------------------------------------------------
# enumeration helpers


@lru_cache(maxsize=None)
def _subset_rows(num_vertices: int, size: int) -> np.ndarray:
    rows = np.array(
        list(itertools.combinations(range(num_vertices), size)), dtype=np.intp
    ).reshape(-1, size)
    rows.setflags(write=False)
    return rows


@lru_cache(maxsize=None)
def _subset_faces(num_vertices: int, size: int) -> tuple[FaceIndex, ...]:
    return tuple(
        FaceIndex(i + 1 for i in combo)
        for combo in itertools.combinations(range(num_vertices), size)
    )


@lru_cache(maxsize=None)
def _superset_rows(num_vertices: int, size: int, base: tuple[int, ...]) -> np.ndarray:
    """0-based index rows of all size-`size` supersets of `base`, in lex order."""
    others = [i for i in range(num_vertices) if i not in base]
    rows = np.array(
        [sorted(base + combo) for combo in itertools.combinations(others, size - len(base))],
        dtype=np.intp,
    ).reshape(-1, size)
    rows.setflags(write=False)
    return rows


def _rows_norm_sq(s: Simplex, rows: np.ndarray) -> np.ndarray:
    """Vectorized ||y||^2 for every index row (float path)."""
    arr = s.as_array
    n = s.n
    m = rows.shape[1]
    g = arr[rows].mean(axis=1)
    c = arr.mean(axis=0)
    rho = math.sqrt(float(rho_sq(n, m)))
    y = (1.0 + rho) * c - rho * g
    return np.einsum("ij,ij->i", y, y)


def all_faces(num_vertices: int, dim: int) -> tuple[FaceIndex, ...]:
    """Every face of the given dimension, lexicographic by index set."""
    return _subset_faces(num_vertices, dim + 1)


def faces_norm_sq(s: Simplex, dim: int) -> np.ndarray:
    """Float ||y||^2 for every face of dimension dim, aligned with all_faces."""
    if not 0 <= dim <= s.n - 1:
        raise ArgumentError(f"face dimension must be in 0..{s.n - 1}, got {dim}")
    return _rows_norm_sq(s, _subset_rows(s.num_vertices, dim + 1))


# ---------------------------------------------------------------------------
# core operations


def _resolve_exact(s: Simplex, mode: str | None) -> bool:
    if mode is None:
        return s.is_exact
    if mode not in ("exact", "float"):
        raise ArgumentError(f"unknown mode {mode!r}; expected 'exact' or 'float'")
    if mode == "exact" and not s.is_exact:
        raise ArgumentError("exact mode requires rational coordinates")
    return mode == "exact"


def _check_in_ball(s: Simplex) -> None:
    if s.is_exact:
        if any(sum(x * x for x in row) > 1 for row in s.vertices):
            raise ArgumentError("simplex is not contained in the closed unit ball")
    else:
        norms = np.sqrt((s.as_array**2).sum(axis=1))
        if float(norms.max()) > 1.0 + INSCRIBED_TOL:
            raise ArgumentError("simplex is not contained in the closed unit ball")


def _check_inscribed(s: Simplex) -> None:
    if s.is_exact:
        if any(sum(x * x for x in row) != 1 for row in s.vertices):
            raise ArgumentError("vertices must lie exactly on the unit sphere")
    else:
        norms = np.sqrt((s.as_array**2).sum(axis=1))
        if float(np.abs(norms - 1.0).max()) > INSCRIBED_TOL:
            raise ArgumentError("vertices must lie on the unit sphere (tol 1e-9)")


def find_suitable_vertex(s: Simplex, mode: str | None = None) -> int:
    """Smallest vertex index j with <c, c - x_j> <= 0; that vertex is suitable.

    The centroid c lies on the hyperplane <c, c - x> = 0, so some vertex
    always satisfies the inequality when the simplex sits in the unit
    ball; finding none signals a bug, not bad input.
    """
    _check_in_ball(s)
    exact = _resolve_exact(s, mode)
    if exact:
        c = centroid(s)
        for j, row in enumerate(s.vertices, start=1):
            if sum(ck * (ck - xk) for ck, xk in zip(c, row)) <= 0:
                return j
    else:
        arr = s.as_array
        c = arr.mean(axis=0)
        vals = (c * (c - arr)).sum(axis=1)
        hits = np.nonzero(vals <= VERTEX_CONDITION_TOL)[0]
        if hits.size:
            return int(hits[0]) + 1
    raise InternalInvariantError(
        "no vertex satisfies <c, c - x_j> <= 0 for a simplex in the ball"
    )


def suitable_faces(
    s: Simplex,
    dim: int,
    mode: str | None = None,
    tol: float = FLOAT_BOUNDARY_TOL,
) -> list[FaceIndex]:
    """All suitable faces of the given dimension, lexicographic order."""
    if not 0 <= dim <= s.n - 1:
        raise ArgumentError(f"face dimension must be in 0..{s.n - 1}, got {dim}")
    if mode is None:
        mode = "exact" if s.is_exact else "float"
    faces = all_faces(s.num_vertices, dim + 1)
    if mode == "float":
        norms = faces_norm_sq(s, dim)
        return [f for f, v in zip(faces, norms) if v <= 1.0 + tol]
    return [f for f in faces if is_suitable(s, f, mode="exact")]


def extend_face(
    s: Simplex,
    base: FaceLike,
    dim: int,
    mode: str | None = None,
    tol: float = FLOAT_BOUNDARY_TOL,
) -> FaceIndex | None:
    """Lex-first suitable face of dimension dim containing `base`, or None."""
    face = _as_face(base)
    if face.indices[-1] > s.num_vertices:
        raise ArgumentError(
            f"vertex index {face.indices[-1]} out of range 1..{s.num_vertices}"
        )
    if not face.dim <= dim <= s.n - 1:
        raise ArgumentError(
            f"target dimension must be in {face.dim}..{s.n - 1}, got {dim}"
        )
    if mode is None:
        mode = "exact" if s.is_exact else "float"
    base0 = tuple(i - 1 for i in face.indices)
    rows = _superset_rows(s.num_vertices, dim + 1, base0)
    if mode == "float":
        norms = _rows_norm_sq(s, rows)
        hits = np.nonzero(norms <= 1.0 + tol)[0]
        if hits.size:
            return FaceIndex(int(i) + 1 for i in rows[hits[0]])
        return None
    for row in rows:
        f = FaceIndex(int(i) + 1 for i in row)
        if is_suitable(s, f, mode="exact"):
            return f
    return None


def extend_suitable_face(
    s: Simplex, v: int, dim: int, mode: str | None = None
) -> FaceIndex:
    """Lex-smallest suitable face of dimension dim containing vertex v.

    Requires v itself to be suitable. Exhausting the search raises
    NoSuitableFaceError carrying a critical finding; callers escalate that
    to an exact recheck (see `vertex_extension_check`).
    """
    if not 1 <= v <= s.num_vertices:
        raise ArgumentError(f"vertex index {v} out of range 1..{s.num_vertices}")
    if not 1 <= dim <= s.n - 1:
        raise ArgumentError(f"target dimension must be in 1..{s.n - 1}, got {dim}")
    if not is_suitable(s, (v,), mode=mode):
        raise ArgumentError(f"vertex {v} is not suitable; extension premise fails")
    found = extend_face(s, (v,), dim, mode=mode)
    if found is None:
        raise NoSuitableFaceError(
            f"no suitable {dim}-face contains suitable vertex {v}",
            finding=CriticalFinding(
                kind="vertex-extension",
                n=s.n,
                dim=dim,
                vertex=v,
                digest=simplex_digest(s),
                detail="float-mode exhaustive search failed; exact recheck required",
            ),
        )
    return found


def vertex_condition(
    s: Simplex, v: int, mode: str | None = None, tol: float = INSCRIBED_TOL
) -> bool:
    """Gram-side test equivalent to vertex suitability on inscribed simplices.

    For unit vertices, ||2c - x_v||^2 <= 1 rearranges to

        sum_{i<j, i,j != v} <x_i, x_j>  <=  ((n-1)/2) * sum_{j != v} <x_v, x_j>.
    """
    if not 1 <= v <= s.num_vertices:
        raise ArgumentError(f"vertex index {v} out of range 1..{s.num_vertices}")
    _check_inscribed(s)
    exact = _resolve_exact(s, mode)
    v0 = v - 1
    if exact:
        gram = s.gram
        others = [i for i in range(s.num_vertices) if i != v0]
        lhs = sum(
            gram[i][j] for a, i in enumerate(others) for j in others[a + 1 :]
        )
        rhs = Fraction(s.n - 1, 2) * sum(gram[v0][j] for j in others)
        return lhs <= rhs
    arr = s.as_array
    gram = arr @ arr.T
    others = [i for i in range(s.num_vertices) if i != v0]
    sub = gram[np.ix_(others, others)]
    lhs = float(sub.sum() - np.trace(sub)) / 2.0
    rhs = (s.n - 1) / 2.0 * float(gram[v0, others].sum())
    return lhs <= rhs + tol


class SumBound(NamedTuple):
    total: float | QuadSurd
    bound: int
    holds: bool


def sum_bound_check(s: Simplex, v: int, dim: int, mode: str | None = None) -> SumBound:
    """Sum of ||y||^2 over all dim-faces containing v versus binomial(n, dim).

    The averaging step behind the extension result: if the sum stays at or
    below the face count, some face in the family must have ||y||^2 <= 1.
    Inscribed simplices only; equality holds for the regular simplex.
    """
    if not 1 <= v <= s.num_vertices:
        raise ArgumentError(f"vertex index {v} out of range 1..{s.num_vertices}")
    if not 1 <= dim <= s.n - 1:
        raise ArgumentError(f"face dimension must be in 1..{s.n - 1}, got {dim}")
    _check_inscribed(s)
    if not is_suitable(s, (v,), mode=mode):
        raise ArgumentError(f"vertex {v} is not suitable")
    bound = math.comb(s.n, dim)
    exact = _resolve_exact(s, mode)
    rows = _superset_rows(s.num_vertices, dim + 1, (v - 1,))
    if exact:
        d = rho_sq(s.n, dim + 1)
        total = QuadSurd(0, 0, d)
        for row in rows:
            total = total + y_norm_sq_surd(s, FaceIndex(int(i) + 1 for i in row))
        return SumBound(total, bound, total.compare(bound) <= 0)
    total = float(_rows_norm_sq(s, rows).sum())
    return SumBound(total, bound, total <= bound + FLOAT_BOUNDARY_TOL)


# ---------------------------------------------------------------------------
# coefficients of the summed inequality


def _comb0(n: int, k: int) -> int:
    return math.comb(n, k) if 0 <= k <= n else 0


@dataclass(frozen=True)
class CoeffPair:
    """Exact coefficients (a, b) of the two scalar-product groups in the
    summed-face inequality a * sum_{i<j} <x_i,x_j> <= b * sum_j <x_v,x_j>.

    Both live in the surd family u + v * rho' with rho'^2 = (m+1)n/(n-m).
    The cross-multiplied proportionality 2b = (n-1) a holds identically,
    including the degenerate m = n-1 case where a = b = 0.
    """

    n: int
    m: int
    a: QuadSurd
    b: QuadSurd

    @property
    def a_float(self) -> float:
        return float(self.a)

    @property
    def b_float(self) -> float:
        return float(self.b)


def sum_inequality_coeffs(n: int, m: int) -> CoeffPair:
    """Exact (a, b) for extending a suitable vertex to an m-face.

    Computed twice: from the raw bracket expressions that fall out of
    summing the squared boundary-point norms, and from the simplified
    closed forms; the two must agree exactly, which guards against
    transcription slips in either. The simplified numerator
    2m^2 + n^2 - 3mn + m - n equals (n-m)(n-2m-1); both forms are kept
    and asserted equal.
    """
    if n < 2:
        raise ArgumentError(f"need n >= 2, got {n}")
    if not 1 <= m <= n - 1:
        raise ArgumentError(f"need 1 <= m <= n-1, got m={m}")
    dp = rho_prime_sq(n, m)
    rp = QuadSurd(0, 1, dp)
    cnm = math.comb(n, m)
    num = 2 * m * m + n * n - 3 * m * n + m - n
    if num != (n - m) * (n - 2 * m - 1):
        raise InternalInvariantError("numerator factorization identity failed")

    lead_a = Fraction(4 * cnm, (n + 1) ** 2 * (m + 1))
    a = lead_a * (
        Fraction(n - m, n) * rp + Fraction(num, (n - m) * (n - 1))
    )
    lead_b = Fraction(2 * cnm, (n + 1) ** 2 * (m + 1))
    b = lead_b * (
        Fraction((n - m) * (n - 1), n) * rp + Fraction(num, n - m)
    )

    # raw bracket forms; the last summand of `a` is absent when n = 2,
    # which the zero-for-negative binomial convention reproduces
    one_plus = QuadSurd(1 + dp, 2, dp)          # (1 + rho')^2
    rp_one_plus = QuadSurd(dp, 1, dp)           # rho' (1 + rho')
    bracket = cnm * one_plus - 2 * Fraction(_comb0(n - 1, m - 1) * (n + 1), m + 1) * rp_one_plus
    a_raw = Fraction(2, (n + 1) ** 2) * bracket + Fraction(
        2 * _comb0(n - 2, m - 2), (m + 1) ** 2
    ) * dp
    b_raw = (
        -Fraction(2, (n + 1) ** 2) * bracket
        + Fraction(2 * (cnm - _comb0(n - 1, m - 1)), (m + 1) * (n + 1)) * rp_one_plus
        - Fraction(2 * _comb0(n - 1, m - 1), (m + 1) ** 2) * dp
    )
    if a_raw != a or b_raw != b:
        raise InternalInvariantError(
            f"raw and simplified coefficient forms disagree for n={n}, m={m}"
        )
    if 2 * b != (n - 1) * a:
        raise InternalInvariantError(f"2b = (n-1)a failed for n={n}, m={m}")
    return CoeffPair(n, m, a, b)


@dataclass(frozen=True)
class CoefficientIdentity:
    """The coefficient sum in front of the squared vertex norms; always 1."""

    n: int
    m: int
    q_sum: Fraction


def coefficient_identity(n: int, m: int) -> CoefficientIdentity:
    """Sum of the ||x_i||^2 coefficients in the expansion of ||y_J||^2.

    Evaluates ((1+rho)^2 - 2 rho (1+rho))/(n+1) + rho^2/m in exact surd
    arithmetic with rho^2 = m n/(n-m+1); the irrational parts cancel and
    the rational remainder must be exactly 1.
    """
    d = rho_sq(n, m)
    rho = QuadSurd(0, 1, d)
    one_plus_sq = (1 + rho) * (1 + rho)
    q = (one_plus_sq - 2 * rho * (1 + rho)) / (n + 1) + (rho * rho) / m
    if q.beta != 0:
        raise InternalInvariantError("irrational parts failed to cancel in Q")
    q_sum = q.as_fraction()
    if q_sum != 1:
        raise InternalInvariantError(f"coefficient sum Q = {q_sum} != 1 at n={n}, m={m}")
    return CoefficientIdentity(n, m, q_sum)


# ---------------------------------------------------------------------------
# escalating verification checks


@dataclass(frozen=True)
class CriticalFinding:
    """An exact-confirmed failed existence search: a falsified invariant.

    These are research-grade alarms: either the implementation is wrong or
    a proved statement is not. Reports must keep enough data (digest plus
    regeneration info upstream) to reproduce the simplex exactly.
    """

    kind: str
    n: int
    dim: int
    vertex: int | None
    digest: str
    detail: str


@dataclass(frozen=True)
class CheckOutcome:
    ok: bool
    escalated: bool
    witness: FaceIndex | None = None
    finding: CriticalFinding | None = None
    premise_void: bool = False


def face_existence_check(
    s: Simplex, dim: int, clear_margin: float = NEAR_BOUNDARY_EPS
) -> CheckOutcome:
    """Certified check that some suitable face of dimension dim exists.

    A float witness with ||y||^2 <= 1 - clear_margin passes outright. If
    the best candidate is boundary-tight (the regular simplex makes every
    face so), the whole search reruns in exact arithmetic on the rational
    copy scaled into the ball; only an exhausted exact search produces a
    finding.
    """
    faces = all_faces(s.num_vertices, dim + 1)
    norms = faces_norm_sq(s, dim)
    hits = np.nonzero(norms <= 1.0 - clear_margin)[0]
    if hits.size:
        return CheckOutcome(ok=True, escalated=False, witness=faces[int(hits[0])])
    exact = rationalize_to_ball(s)
    for f in faces:
        if is_suitable(exact, f, mode="exact"):
            return CheckOutcome(ok=True, escalated=True, witness=f)
    return CheckOutcome(
        ok=False,
        escalated=True,
        finding=CriticalFinding(
            kind="face-existence",
            n=s.n,
            dim=dim,
            vertex=None,
            digest=simplex_digest(s),
            detail="exact exhaustive search found no suitable face",
        ),
    )


def vertex_extension_check(
    s: Simplex, v: int, dim: int, clear_margin: float = NEAR_BOUNDARY_EPS
) -> CheckOutcome:
    """Certified check that suitable vertex v extends to a suitable dim-face.

    Same escalation discipline as `face_existence_check`. If the exact
    recheck shows the premise itself fails (v not suitable after all, a
    float false positive), the outcome is vacuously ok with premise_void
    set rather than a finding.
    """
    base0 = (v - 1,)
    rows = _superset_rows(s.num_vertices, dim + 1, base0)
    norms = _rows_norm_sq(s, rows)
    hits = np.nonzero(norms <= 1.0 - clear_margin)[0]
    if hits.size:
        witness = FaceIndex(int(i) + 1 for i in rows[hits[0]])
        return CheckOutcome(ok=True, escalated=False, witness=witness)
    exact = rationalize_to_ball(s)
    if not is_suitable(exact, (v,), mode="exact"):
        return CheckOutcome(ok=True, escalated=True, premise_void=True)
    found = extend_face(exact, (v,), dim, mode="exact")
    if found is not None:
        return CheckOutcome(ok=True, escalated=True, witness=found)
    return CheckOutcome(
        ok=False,
        escalated=True,
        finding=CriticalFinding(
            kind="vertex-extension",
            n=s.n,
            dim=dim,
            vertex=v,
            digest=simplex_digest(s),
            detail="exact exhaustive search found no suitable face containing the vertex",
        ),
    )


# ---------------------------------------------------------------------------
# reporting


@dataclass(frozen=True)
class SuitabilityReport:
    """Machine-readable listing of the suitable faces of one dimension."""

    digest: str
    mode: str
    dim: int
    faces: tuple[tuple[FaceIndex, str], ...] = field(default_factory=tuple)

    def to_json_dict(self) -> dict:
        return {
            "vertices_sha256": self.digest,
            "mode": self.mode,
            "dim": self.dim,
            "suitable": [
                {"indices": list(f.indices), "norm_sq": v} for f, v in self.faces
            ],
        }


def faces_report(s: Simplex, dim: int, mode: str | None = None) -> SuitabilityReport:
    """Suitable faces of one dimension with their squared norms as strings."""
    if mode is None:
        mode = "exact" if s.is_exact else "float"
    if mode == "exact" and not s.is_exact:
        s = rationalize_to_ball(s)
    entries = []
    if mode == "float":
        faces = all_faces(s.num_vertices, dim + 1)
        norms = faces_norm_sq(s, dim)
        for f, val in zip(faces, norms):
            if val <= 1.0 + FLOAT_BOUNDARY_TOL:
                entries.append((f, format(float(val), ".17g")))
    else:
        for f in all_faces(s.num_vertices, dim + 1):
            q = y_norm_sq_surd(s, f)
            if q.compare(1) <= 0:
                entries.append((f, format(float(q), ".17g")))
    return SuitabilityReport(simplex_digest(s), mode, dim, tuple(entries))
