"""Command-line front end: verification suites, explorer, tables, queries.

Machine-readable output (JSON, CSV, JSONL) goes to stdout or files so
pipelines can consume it; human-readable one-liners go to stderr. All
floats are printed with 17 significant digits and rationals as "p/q", so
identical inputs and seeds produce byte-identical output.

Exit codes: 0 clean; 2 exact-confirmed violation from `verify`; 64
malformed input or usage; 65 degenerate simplex; 70 internal invariant
violation (a bug).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from .ellipsoid import membership_margin, minimal_ellipsoid, mvee
from .errors import (
    ArgumentError,
    DegenerateSimplexError,
    InternalInvariantError,
    MalformedInputError,
    ModeError,
    SimballError,
)
from .geometry import Simplex, simplex_from_json_dict
from .projector import theta_table
from .sampling import CampaignConfig, random_simplex_for_trial, run_campaign
from .suitability import (
    VERTEX_CONDITION_TOL,
    face_existence_check,
    faces_report,
    vertex_extension_check,
)

EXIT_OK = 0
EXIT_VIOLATION = 2
EXIT_USAGE = 64
EXIT_DEGENERATE = 65
EXIT_INTERNAL = 70


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def render_json(obj, indent: int = 0) -> str:
    """JSON with floats at 17 significant digits, independent of locale."""
    pad = " " * indent
    if isinstance(obj, dict):
        items = ",\n".join(
            f'{pad}  {json.dumps(str(k))}: {render_json(v, indent + 2).lstrip()}'
            for k, v in obj.items()
        )
        return f"{pad}{{\n{items}\n{pad}}}" if obj else f"{pad}{{}}"
    if isinstance(obj, (list, tuple)):
        items = ",\n".join(render_json(v, indent + 2) for v in obj)
        return f"{pad}[\n{items}\n{pad}]" if len(obj) else f"{pad}[]"
    if isinstance(obj, bool) or obj is None:
        return pad + json.dumps(obj)
    if isinstance(obj, float):
        return pad + _fmt(obj)
    if isinstance(obj, Fraction):
        return pad + json.dumps(str(obj))
    if isinstance(obj, int):
        return pad + str(obj)
    return pad + json.dumps(obj)


class _Parser(argparse.ArgumentParser):
    # usage problems share the malformed-input exit code, keeping 2 free
    # for verification verdicts
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _load_simplex(path: str) -> Simplex:
    try:
        if path == "-":
            obj = json.load(sys.stdin)
        else:
            obj = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise MalformedInputError(f"cannot read simplex JSON from {path}: {e}") from e
    return simplex_from_json_dict(obj)


# ---------------------------------------------------------------------------
# verify


def _qualifying_vertices(s: Simplex) -> list[int]:
    arr = s.as_array
    c = arr.mean(axis=0)
    vals = (c * (c - arr)).sum(axis=1)
    return [int(i) + 1 for i in np.nonzero(vals <= VERTEX_CONDITION_TOL)[0]]


def run_verify_suite(n: int, trials: int, seed: int, mode: str = "both") -> dict:
    """Face-existence and vertex-extension suites over a sampled corpus.

    Deterministic for fixed (n, trials, seed, mode); violations are only
    ever exact-confirmed ones, float near-boundary cases count as
    escalations.
    """
    kinds = ("inscribed", "in-ball") if mode == "both" else (mode,)
    existence = {"checks": 0, "clean": 0, "escalated": 0, "violations": []}
    extension = {
        "checks": 0,
        "clean": 0,
        "escalated": 0,
        "premise_void": 0,
        "violations": [],
    }
    simplices = 0
    for offset, kind in enumerate(kinds):
        for t in range(trials):
            s = random_simplex_for_trial(n, kind, seed, offset * trials + t)
            simplices += 1
            for dim in range(n):
                outcome = face_existence_check(s, dim)
                existence["checks"] += 1
                if outcome.ok and not outcome.escalated:
                    existence["clean"] += 1
                elif outcome.ok:
                    existence["escalated"] += 1
                else:
                    existence["escalated"] += 1
                    existence["violations"].append(
                        {**outcome.finding.__dict__, "trial": t, "sampling": kind}
                    )
            for v in _qualifying_vertices(s):
                for dim in range(1, n):
                    outcome = vertex_extension_check(s, v, dim)
                    extension["checks"] += 1
                    if outcome.premise_void:
                        extension["premise_void"] += 1
                    elif outcome.ok and not outcome.escalated:
                        extension["clean"] += 1
                    elif outcome.ok:
                        extension["escalated"] += 1
                    else:
                        extension["escalated"] += 1
                        extension["violations"].append(
                            {**outcome.finding.__dict__, "trial": t, "sampling": kind}
                        )
    violations = len(existence["violations"]) + len(extension["violations"])
    return {
        "command": "verify",
        "n": n,
        "trials": trials,
        "seed": seed,
        "mode": mode,
        "simplices": simplices,
        "face_existence": existence,
        "vertex_extension": extension,
        "verdict": "fail" if violations else "pass",
    }


def _cmd_verify(args) -> int:
    report = run_verify_suite(args.n, args.trials, args.seed, args.mode)
    print(render_json(report))
    ok = report["verdict"] == "pass"
    print(
        f"verify n={args.n}: {report['face_existence']['checks']} existence checks, "
        f"{report['vertex_extension']['checks']} extension checks, "
        f"{'no violations' if ok else 'VIOLATIONS FOUND'}",
        file=sys.stderr,
    )
    return EXIT_OK if ok else EXIT_VIOLATION


# ---------------------------------------------------------------------------
# explore


def _cmd_explore(args) -> int:
    cfg = CampaignConfig(
        n=args.n,
        m=args.m,
        d=args.d,
        trials=args.trials,
        seed=args.seed,
        mode=args.mode,
        near_boundary_eps=args.near_boundary_eps,
    )
    threads = args.threads or int(os.environ.get("SIMBALL_THREADS", "1"))
    summary = run_campaign(cfg, out=args.out, threads=threads)
    print(render_json(summary))
    print(
        f"explore n={cfg.n} m={cfg.m} d={cfg.d}: {cfg.trials} trials, "
        f"{summary['exact_confirmed_candidates']} exact-confirmed candidates "
        f"-> {args.out}",
        file=sys.stderr,
    )
    return EXIT_OK


# ---------------------------------------------------------------------------
# theta


def _cmd_theta(args) -> int:
    rows = theta_table(args.max_n)
    if args.format == "csv":
        print("n,a_n,k_n,tie,psi_a,psi_a1,theta,sqrt_n,sqrt_n1")
        for p in rows:
            print(
                f"{p.n},{p.a_n},{p.k_n},{str(p.tie).lower()},"
                f"{_fmt(p.psi_at_a)},{_fmt(p.psi_at_a_plus_1)},{_fmt(p.theta)},"
                f"{_fmt(p.n ** 0.5)},{_fmt((p.n + 1) ** 0.5)}"
            )
    print(f"theta table for n = 1..{args.max_n}", file=sys.stderr)
    return EXIT_OK


# ---------------------------------------------------------------------------
# ellipsoid


def _cmd_ellipsoid(args) -> int:
    s = _load_simplex(args.input)
    e = minimal_ellipsoid(s)
    out = {
        "center": list(e.center),
        "shape": [list(r) for r in e.shape],
        "volume": e.volume,
    }
    if args.oracle:
        arr = s.as_array
        o = mvee(arr, eps=args.eps)
        center_distance = float(
            np.linalg.norm(np.asarray(o.center) - e.center_array)
        )
        rel_gap = abs(o.volume - e.volume) / e.volume
        margins = [membership_margin(o, row) for row in arr.tolist()]
        out["oracle"] = {
            "center": list(o.center),
            "volume": o.volume,
            "center_distance": center_distance,
            "rel_volume_gap": rel_gap,
            "max_vertex_margin": max(margins),
        }
    print(render_json(out))
    print(f"minimal ellipsoid, volume {e.volume:.6g}", file=sys.stderr)
    return EXIT_OK


# ---------------------------------------------------------------------------
# faces


def _cmd_faces(args) -> int:
    s = _load_simplex(args.input)
    if args.dim is None or not 0 <= args.dim <= s.n - 1:
        raise ArgumentError(f"--dim must be in 0..{s.n - 1}")
    mode = "exact" if (args.exact or s.is_exact) else "float"
    report = faces_report(s, args.dim, mode=mode)
    print(render_json(report.to_json_dict()))
    print(
        f"{len(report.faces)} suitable faces of dimension {args.dim} ({mode} mode)",
        file=sys.stderr,
    )
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="simball", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run the sampled existence/extension suites")
    p.add_argument("--n", type=int, required=True, help="ambient dimension")
    p.add_argument("--trials", type=int, default=100, help="simplices per sampling mode")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=["inscribed", "in-ball", "both"], default="both")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("explore", help="counterexample search for face extension")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True, help="premise face dimension")
    p.add_argument("--d", type=int, required=True, help="target face dimension")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=["inscribed", "in-ball"], default="inscribed")
    p.add_argument("--near-boundary-eps", type=float, default=1e-6)
    p.add_argument("--out", required=True, help="JSONL output path")
    p.add_argument("--threads", type=int, default=0,
                   help="worker threads (default: SIMBALL_THREADS or 1)")
    p.set_defaults(func=_cmd_explore)

    p = sub.add_parser("theta", help="projector-norm table")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--format", choices=["csv"], default="csv")
    p.set_defaults(func=_cmd_theta)

    p = sub.add_parser("ellipsoid", help="minimal enclosing ellipsoid of a simplex")
    p.add_argument("--input", required=True, help="simplex JSON path, or - for stdin")
    p.add_argument("--oracle", action="store_true",
                   help="compare against the iterative Khachiyan solver")
    p.add_argument("--eps", type=float, default=1e-7, help="oracle tolerance")
    p.set_defaults(func=_cmd_ellipsoid)

    p = sub.add_parser("faces", help="suitable faces of one dimension")
    p.add_argument("--input", required=True, help="simplex JSON path, or - for stdin")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--exact", action="store_true",
                   help="force exact arithmetic (rationalizes float input)")
    p.set_defaults(func=_cmd_faces)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MalformedInputError as e:
        print(f"simball: malformed input: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ArgumentError, ModeError) as e:
        print(f"simball: {e}", file=sys.stderr)
        return EXIT_USAGE
    except DegenerateSimplexError as e:
        print(f"simball: degenerate simplex: {e}", file=sys.stderr)
        return EXIT_DEGENERATE
    except InternalInvariantError as e:
        print(f"simball: internal invariant violation: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    except SimballError as e:
        print(f"simball: {e}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
