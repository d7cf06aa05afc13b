"""Seeded random simplices and the suitable-face extension search campaign.

Reproducibility contract: the map (seed, trial index) -> simplex is a pure
function. Each trial owns a counter-based RNG substream (Philox keyed by
the seed, counter offset by the trial), so trials are independent,
parallelizable, and identical regardless of thread count or execution
order. Campaign records are emitted in trial order and are byte-identical
across runs.

The probe hunts counterexamples to the open extension question: a suitable
m-dimensional face with no suitable d-dimensional superset. Float verdicts
close to the unit sphere prove nothing either way, so every failure (and
every premise that is not clearly decided) is re-run in exact rational
arithmetic on the dyadic reading of the vertices, scaled into the ball.
Only exact-confirmed failures are ever reported; the expected count is
zero, and a nonzero count is a research finding rather than a test
failure.
"""

from __future__ import annotations

import contextlib
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import partial
from pathlib import Path
from typing import IO, Iterable

import numpy as np

from .errors import (
    ArgumentError,
    CampaignIOError,
    DegenerateSimplexError,
    SamplingError,
)
from .geometry import (
    FLOAT_BOUNDARY_TOL,
    FaceIndex,
    Simplex,
    is_suitable,
    rationalize_to_ball,
    simplex_digest,
)
from .suitability import (
    NEAR_BOUNDARY_EPS,
    _check_in_ball,
    _rows_norm_sq,
    _subset_faces,
    _superset_rows,
    extend_face,
)

#: give up after this many consecutive degenerate draws in one trial
MAX_REJECTIONS = 1000

SAMPLING_MODES = ("inscribed", "in-ball")


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Philox substream for one trial: key = seed, counter offset by trial."""
    if not 0 <= seed < 2**64:
        raise ArgumentError("seed must fit in 64 bits")
    if trial < 0:
        raise ArgumentError("trial index must be >= 0")
    return np.random.Generator(np.random.Philox(key=seed, counter=trial << 128))


def random_simplex(n: int, mode: str, rng: np.random.Generator) -> Simplex:
    """One nondegenerate random simplex; resamples degenerate draws.

    inscribed: n+1 iid uniform points on the unit sphere (normalized
    standard normals). in-ball: uniform points in the ball (direction
    times U^(1/n) radius).
    """
    if n < 1:
        raise ArgumentError(f"dimension must be >= 1, got {n}")
    if mode not in SAMPLING_MODES:
        raise ArgumentError(f"mode must be one of {SAMPLING_MODES}, got {mode!r}")
    for _ in range(MAX_REJECTIONS):
        pts = rng.standard_normal((n + 1, n))
        norms = np.sqrt((pts**2).sum(axis=1))
        if float(norms.min()) == 0.0:
            continue
        pts /= norms[:, None]
        if mode == "in-ball":
            pts *= rng.random(n + 1)[:, None] ** (1.0 / n)
        try:
            return Simplex(pts.tolist())
        except DegenerateSimplexError:
            continue
    raise SamplingError(
        f"{MAX_REJECTIONS} consecutive degenerate samples at n={n}; "
        "check the degeneracy threshold"
    )


def random_simplex_for_trial(n: int, mode: str, seed: int, trial: int) -> Simplex:
    """Deterministic simplex for (seed, trial); the campaign regeneration map."""
    return random_simplex(n, mode, trial_rng(seed, trial))


# ---------------------------------------------------------------------------
# the extension probe


@dataclass(frozen=True)
class CampaignConfig:
    """Parameters of one counterexample-search campaign.

    m is the dimension of the premise face, d the target dimension; the
    open range is 0 < m < n-2 (m = 0 is the proved vertex case, m = n-2
    is trivially extendable).
    """

    n: int
    m: int
    d: int
    trials: int
    seed: int
    mode: str = "inscribed"
    near_boundary_eps: float = NEAR_BOUNDARY_EPS

    def __post_init__(self):
        if self.n < 2:
            raise ArgumentError(f"need n >= 2, got {self.n}")
        if not 0 <= self.m <= self.n - 2:
            raise ArgumentError(f"need 0 <= m <= n-2, got m={self.m}")
        if not self.m + 1 <= self.d <= self.n - 1:
            raise ArgumentError(f"need m+1 <= d <= n-1, got d={self.d}")
        if self.trials < 1:
            raise ArgumentError("trials must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ArgumentError("seed must fit in 64 bits")
        if self.mode not in SAMPLING_MODES:
            raise ArgumentError(f"mode must be one of {SAMPLING_MODES}")
        if self.near_boundary_eps <= 0:
            raise ArgumentError("near_boundary_eps must be positive")


@dataclass(frozen=True)
class FaceVerdict:
    """Extension outcome for one premise face within one probe."""

    face: FaceIndex
    witness: FaceIndex | None
    escalated: bool
    premise_exact: bool | None  # None when the float verdict was clear


@dataclass(frozen=True)
class ProbeRecord:
    """Per-trial probe result; serialized to one JSONL line.

    Every face listed in `unextendable` is exact-confirmed: its premise
    held and the exhaustive exact search over supersets failed.
    """

    trial: int
    n: int
    m: int
    d: int
    seed: int
    digest: str
    suitable_m_faces: tuple[FaceIndex, ...]
    verdicts: tuple[FaceVerdict, ...]
    unextendable: tuple[FaceIndex, ...]
    escalations: int
    exact_confirmed: bool

    def to_json_dict(self) -> dict:
        return {
            "trial": self.trial,
            "n": self.n,
            "m": self.m,
            "d": self.d,
            "suitable_m_faces": len(self.suitable_m_faces),
            "unextendable": [list(f.indices) for f in self.unextendable],
            "exact_confirmed": self.exact_confirmed,
            "regen": {"seed": self.seed, "trial": self.trial},
        }


def conjecture_probe(
    s: Simplex,
    m: int,
    d: int,
    near_eps: float = NEAR_BOUNDARY_EPS,
    trial: int = 0,
    seed: int = 0,
) -> ProbeRecord:
    """Check every suitable m-face of s for a suitable d-dimensional superset.

    Float arithmetic screens; anything within near_eps of the unit sphere
    (an unclear premise or a failed extension search) is settled exactly
    on the rationalized simplex before a face may enter `unextendable`.
    """
    n = s.n
    if not 0 <= m <= n - 2:
        raise ArgumentError(f"need 0 <= m <= n-2, got m={m}")
    if not m + 1 <= d <= n - 1:
        raise ArgumentError(f"need m+1 <= d <= n-1, got d={d}")
    _check_in_ball(s)

    faces = _subset_faces(s.num_vertices, m + 1)
    norms = _rows_norm_sq(s, np.array([[i - 1 for i in f.indices] for f in faces]))
    suitable = tuple(
        f for f, v in zip(faces, norms) if v <= 1.0 + FLOAT_BOUNDARY_TOL
    )

    verdicts: list[FaceVerdict] = []
    unextendable: list[FaceIndex] = []
    escalations = 0
    exact = None
    for f, norm_sq in zip(faces, norms):
        if norm_sq > 1.0 + near_eps:
            continue  # clearly not a suitable premise
        base0 = tuple(i - 1 for i in f.indices)
        ext_rows = _superset_rows(s.num_vertices, d + 1, base0)
        ext_norms = _rows_norm_sq(s, ext_rows)
        clear = np.nonzero(ext_norms <= 1.0 - near_eps)[0]
        if clear.size:
            witness = FaceIndex(int(i) + 1 for i in ext_rows[clear[0]])
            verdicts.append(FaceVerdict(f, witness, False, None))
            continue
        # no clearly suitable superset in float: settle exactly
        escalations += 1
        if exact is None:
            exact = rationalize_to_ball(s)
        if not is_suitable(exact, f, mode="exact"):
            verdicts.append(FaceVerdict(f, None, True, False))
            continue
        witness = extend_face(exact, f, d, mode="exact")
        verdicts.append(FaceVerdict(f, witness, True, True))
        if witness is None:
            unextendable.append(f)

    return ProbeRecord(
        trial=trial,
        n=n,
        m=m,
        d=d,
        seed=seed,
        digest=simplex_digest(s),
        suitable_m_faces=suitable,
        verdicts=tuple(verdicts),
        unextendable=tuple(unextendable),
        escalations=escalations,
        exact_confirmed=bool(unextendable),
    )


# ---------------------------------------------------------------------------
# campaign driver


def _run_trial(cfg: CampaignConfig, trial: int) -> ProbeRecord:
    s = random_simplex_for_trial(cfg.n, cfg.mode, cfg.seed, trial)
    return conjecture_probe(
        s, cfg.m, cfg.d, near_eps=cfg.near_boundary_eps, trial=trial, seed=cfg.seed
    )


def campaign_records(cfg: CampaignConfig, threads: int = 1) -> list[ProbeRecord]:
    """All probe records in trial order; thread count never changes results."""
    if threads <= 1:
        return [_run_trial(cfg, t) for t in range(cfg.trials)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(partial(_run_trial, cfg), range(cfg.trials), chunksize=64))


def summarize(cfg: CampaignConfig, records: Iterable[ProbeRecord]) -> dict:
    records = list(records)
    candidates = sum(len(r.unextendable) for r in records)
    return {
        "n": cfg.n,
        "m": cfg.m,
        "d": cfg.d,
        "trials": cfg.trials,
        "seed": cfg.seed,
        "mode": cfg.mode,
        "near_boundary_eps": cfg.near_boundary_eps,
        "suitable_faces_total": sum(len(r.suitable_m_faces) for r in records),
        "near_boundary_escalations": sum(r.escalations for r in records),
        "exact_confirmed_candidates": candidates,
        "trials_with_candidates": sum(1 for r in records if r.exact_confirmed),
    }


def write_jsonl(records: Iterable[ProbeRecord], stream: IO[str]) -> None:
    """One compact JSON object per record; aborts with a partial marker on I/O failure."""
    try:
        for r in records:
            stream.write(json.dumps(r.to_json_dict(), separators=(",", ":")) + "\n")
    except OSError as e:
        with contextlib.suppress(OSError):
            stream.write('{"campaign_aborted":true,"partial_results":true}\n')
        raise CampaignIOError(f"campaign output stream failed: {e}") from e


def run_campaign(
    cfg: CampaignConfig,
    out: str | Path | IO[str] | None = None,
    threads: int = 1,
) -> dict:
    """Run all trials, stream records as JSONL, and return the summary."""
    records = campaign_records(cfg, threads=threads)
    if out is not None:
        if hasattr(out, "write"):
            write_jsonl(records, out)
        else:
            with open(out, "w", encoding="utf-8", newline="\n") as fh:
                write_jsonl(records, fh)
    return summarize(cfg, records)
