"""Command-line surface: bases, relation fuzzing, region scans, comparisons.

Subcommands
-----------
basis (alias: structure-consts)
    Serialize the su(N) generators and sparse f/d tensors as JSON or CSV.
verify
    Fuzz one relation over seeded random draws; exit 0 iff every check
    holds at the relation's tolerance.
region
    Monte-Carlo scan of a variance region (pair or axis triple) with CSV
    and JSON artifacts plus slice summaries.
compare
    Tabulate the commutator baseline, both signs of the state-dependent
    bound, and the state-independent span for one (state, A, B) triple.

Exit codes: 0 success/holds, 1 relation violated beyond tolerance,
2 usage error.  Every report echoes its fully resolved configuration,
seed included; re-running an echoed configuration reproduces the
numbers bit for bit.  The environment variable ``UR_THREADS`` sets the
worker count, which affects wall time only, never results: sample i is
always drawn from RNG stream i.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .bloch import (
    Observable,
    QuantumState,
    completely_mixed,
    matrix_from_json,
    observable_from_bloch,
    observable_from_matrix,
    state_from_matrix,
    state_to_matrix,
)
from .errors import NotApplicable, UnphysicalState
from .regions import RegionScan, scan_pair, scan_triple
from .relations import (
    check_appendix_b,
    check_appendix_c,
    check_mixed_limit,
    check_pure_limit,
    check_theorem1,
    check_three_observable_equality,
    check_triangle,
    check_unit_vector_relation,
    db_span_any_state,
    db_span_given_da2,
    effective_axis_angle,
    robertson_bound,
    state_dependent_bound,
)
from .sampling import SampleConfig, Xoshiro256pp, draw_mixed, draw_observable, draw_pure
from .sun_basis import basis_for, max_algebra_residual
from .variance import variance_matrix

__all__ = ["main", "run", "build_parser"]

SCHEMA_VERSION = 1
EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2

# Relations exposed on the CLI and the dimensions each is defined for
# (None = any dimension >= 2).
_RELATION_DIMS: dict[str, tuple[int, ...] | None] = {
    "triangle": (2,),
    "theorem1": (2,),
    "mixed-limit": (2,),
    "pure-limit": (2,),
    "unit-vector": (2,),
    "three-obs-equality": (2,),
    "appendix-b": (2,),
    "appendix-c": None,
    "robertson": None,
    "state-dependent": (2,),
}


def _threads() -> int:
    raw = os.environ.get("UR_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _map_chunks(total: int, threads: int, worker):
    if threads <= 1 or total < 2:
        return [worker(0, total)]
    n_chunks = min(threads, total)
    step = -(-total // n_chunks)
    bounds = [(lo, min(lo + step, total)) for lo in range(0, total, step)]
    with ThreadPoolExecutor(max_workers=len(bounds)) as pool:
        return list(pool.map(lambda span: worker(*span), bounds))


# ---------------------------------------------------------------------------
# fuzzing recipes


def _mixture_state(rng: Xoshiro256pp, basis, index: int) -> QuantumState:
    # Alternate pure and full-rank mixed draws so both regimes are hit.
    if index % 2 == 0:
        return draw_pure(rng, basis)
    return draw_mixed(rng, basis)


def _project_orthogonal(p: np.ndarray, vecs: list[np.ndarray]) -> np.ndarray:
    out = p.astype(np.float64).copy()
    frame: list[np.ndarray] = []
    for v in vecs:
        w = v.copy()
        for u in frame:
            w = w - float(w @ u) * u
        norm = float(np.linalg.norm(w))
        if norm > 1e-12:
            frame.append(w / norm)
    for u in frame:
        out = out - float(out @ u) * u
    return out


def _verdicts_for(relation: str, basis, rng: Xoshiro256pp, index: int, theta_ab: float):
    if relation == "triangle":
        state = _mixture_state(rng, basis, index)
        a = draw_observable(rng, basis)
        b = draw_observable(rng, basis)
        return [check_triangle(a, b, state)]
    if relation == "theorem1":
        state = _mixture_state(rng, basis, index)
        a = draw_observable(rng, basis)
        b = draw_observable(rng, basis)
        return [check_theorem1(a, b, state)]
    if relation == "mixed-limit":
        state = completely_mixed(basis)
        a = draw_observable(rng, basis)
        b = draw_observable(rng, basis)
        return [check_mixed_limit(a, b, state)]
    if relation == "pure-limit":
        state = draw_pure(rng, basis)
        a = draw_observable(rng, basis)
        b = draw_observable(rng, basis)
        return [check_pure_limit(a, b, state)]
    if relation == "unit-vector":
        state = draw_pure(rng, basis)
        a = draw_observable(rng, basis)
        b = draw_observable(rng, basis)
        da2 = max(1.0 - float(a.a @ state.p) ** 2, 0.0)
        db2 = max(1.0 - float(b.a @ state.p) ** 2, 0.0)
        theta = effective_axis_angle(a, b, state)
        return [check_unit_vector_relation(theta, da2, db2)]
    if relation == "three-obs-equality":
        state = draw_pure(rng, basis)
        return [check_three_observable_equality(theta_ab, state)]
    if relation == "appendix-b":
        state = draw_mixed(rng, basis)
        return [check_appendix_b(state)]
    if relation == "appendix-c":
        return [_appendix_c_sample(basis, rng)]
    if relation == "robertson":
        state = _mixture_state(rng, basis, index)
        a = draw_observable(rng, basis)
        b = draw_observable(rng, basis)
        return [robertson_bound(a, b, state)]
    if relation == "state-dependent":
        state = draw_pure(rng, basis)
        a = draw_observable(rng, basis)
        b = draw_observable(rng, basis)
        return [
            state_dependent_bound(a, b, state, 1),
            state_dependent_bound(a, b, state, -1),
        ]
    raise ValueError(f"unknown relation {relation!r}")


def _appendix_c_sample(basis, rng: Xoshiro256pp, max_tries: int = 200):
    # Rejection sampling: project the Bloch vector onto the orthogonal
    # complement of span{a, b}, then insist the reconstruction is still
    # physical.  Projection shrinks |p|, so acceptance is high.
    for _ in range(max_tries):
        a = draw_observable(rng, basis)
        b = draw_observable(rng, basis)
        state = draw_mixed(rng, basis)
        p = _project_orthogonal(state.p, [np.asarray(a.a), np.asarray(b.a)])
        try:
            projected = state_to_matrix(p, basis)
        except UnphysicalState:
            continue
        if abs(float(a.a @ projected.p)) > 1e-9 or abs(float(b.a @ projected.p)) > 1e-9:
            continue
        return check_appendix_c(a, b, projected, basis)
    raise RuntimeError("no valid zero-mean sample found; ensemble looks pathological")


def _fuzz(relation: str, dim: int, samples: int, seed: int, theta_ab: float, threads: int) -> dict:
    basis = basis_for(dim)

    def worker(lo: int, hi: int):
        worst = math.inf
        worst_abs = 0.0
        holds = True
        saturated = 0
        checks = 0
        for i in range(lo, hi):
            rng = Xoshiro256pp(seed, stream=i)
            for verdict in _verdicts_for(relation, basis, rng, i, theta_ab):
                checks += 1
                worst = min(worst, verdict.margin)
                worst_abs = max(worst_abs, abs(verdict.margin))
                holds = holds and verdict.holds
                saturated += int(verdict.saturated)
        return worst, worst_abs, holds, saturated, checks

    parts = _map_chunks(samples, threads, worker)
    worst = min(part[0] for part in parts)
    worst_abs = max(part[1] for part in parts)
    holds = all(part[2] for part in parts)
    saturated = sum(part[3] for part in parts)
    checks = sum(part[4] for part in parts)
    return {
        "relation": relation,
        "checks": checks,
        "holds": holds,
        "worst_margin": worst,
        "max_abs_margin": worst_abs,
        "saturated": saturated,
    }


# ---------------------------------------------------------------------------
# input grammars


def _parse_triplet(text: str, what: str, parser) -> np.ndarray:
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    parts = body.split(",")
    if len(parts) != 3:
        parser.error(f"{what}: expected three comma-separated numbers, got {text!r}")
    try:
        return np.array([float(p) for p in parts])
    except ValueError:
        parser.error(f"{what}: could not parse {text!r}")


def _load_json_spec(spec: str, parser) -> dict:
    try:
        if spec.startswith("@"):
            with open(spec[1:], "r", encoding="utf-8") as fh:
                return json.load(fh)
        return json.loads(spec)
    except (OSError, json.JSONDecodeError) as exc:
        parser.error(f"could not read JSON matrix {spec!r}: {exc}")


def _parse_observable(spec: str, basis, parser) -> Observable:
    s = spec.strip()
    if s in ("sigma1", "sigma2", "sigma3"):
        if basis.dim != 2:
            parser.error(f"{s} is a qubit observable; dimension is {basis.dim}")
        vec = np.zeros(3)
        vec[int(s[-1]) - 1] = 1.0
        return observable_from_bloch(vec, basis)
    if s.startswith("n:"):
        if basis.dim != 2:
            parser.error("n:(x,y,z) is a qubit form; use a JSON matrix for higher N")
        return observable_from_bloch(_parse_triplet(s[2:], "observable", parser), basis)
    if s.startswith("@") or s.startswith("{"):
        try:
            return observable_from_matrix(matrix_from_json(_load_json_spec(s, parser)), basis)
        except ValueError as exc:
            parser.error(f"bad observable matrix: {exc}")
    parser.error(
        f"unrecognized observable {spec!r}; use sigma1|sigma2|sigma3, n:(x,y,z), "
        "an inline JSON object, or @file.json"
    )


def _parse_state(spec: str, basis, parser) -> QuantumState:
    s = spec.strip()
    try:
        if s == "mixed":
            return completely_mixed(basis)
        if s.startswith("pure:"):
            if basis.dim != 2:
                parser.error("pure:(x,y,z) is a qubit form")
            vec = _parse_triplet(s[5:], "state", parser)
            norm = float(np.linalg.norm(vec))
            if norm < 1e-12:
                parser.error("pure state direction must be nonzero")
            return state_to_matrix(vec / norm, basis)
        if s.startswith("bloch:"):
            if basis.dim != 2:
                parser.error("bloch:(x,y,z) is a qubit form")
            return state_to_matrix(_parse_triplet(s[6:], "state", parser), basis)
        if s.startswith("seed:"):
            return draw_pure(Xoshiro256pp(int(s[5:])), basis)
        if s.startswith("@") or s.startswith("{"):
            return state_from_matrix(matrix_from_json(_load_json_spec(s, parser)), basis)
    except (UnphysicalState, ValueError) as exc:
        parser.error(f"bad state {spec!r}: {exc}")
    parser.error(
        f"unrecognized state {spec!r}; use mixed, pure:(x,y,z), bloch:(x,y,z), "
        "seed:K, an inline JSON object, or @file.json"
    )


# ---------------------------------------------------------------------------
# serialization helpers


def _rle(occupancy: np.ndarray) -> dict:
    flat = occupancy.astype(np.int8).ravel()
    if flat.size == 0:
        return {"first": 0, "runs": []}
    change = np.flatnonzero(np.diff(flat)) + 1
    bounds = np.concatenate([[0], change, [flat.size]])
    return {"first": int(flat[0]), "runs": np.diff(bounds).tolist()}


def _write_report(report: dict, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(report, fh, indent=2)
            fh.write("\n")
        print(f"report written to {out}")


def _write_scan_csv(path: str, scan: RegionScan) -> None:
    header = ["sample_index", "purity"] + list(scan.axes) + ["margin"]
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for i in range(scan.samples.shape[0]):
            row = [i, float(scan.purities[i])]
            row += [float(x) for x in scan.samples[i]]
            row.append(float(scan.margins[i]))
            writer.writerow(row)


def _scan_json(scan: RegionScan, config: dict) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "command": "region",
        "config": config,
        "axes": list(scan.axes),
        "grid": scan.grid,
        "n_cells": scan.n_cells,
        "theta_ab": scan.theta_ab,
        "occupancy_rle": _rle(scan.occupancy),
        "boundary": None if scan.boundary is None else scan.boundary.tolist(),
    }


# ---------------------------------------------------------------------------
# subcommand runners


def _cmd_basis(args, parser) -> tuple[int, dict]:
    if not 2 <= args.dim <= 8:
        parser.error(f"--dim must be in 2..8, got {args.dim}")
    start = time.perf_counter()
    basis = basis_for(args.dim)
    residual = max_algebra_residual(basis)
    payload: dict = {
        "schema": SCHEMA_VERSION,
        "command": "basis",
        "config": {"dim": args.dim, "format": args.format},
        "n_generators": basis.n_generators,
        "f": [[j, k, l, v] for (j, k, l), v in sorted(basis.f_tensor.items())],
        "d": [[j, k, l, v] for (j, k, l), v in sorted(basis.d_tensor.items())],
        "algebra_residual": residual,
    }
    if args.format == "json":
        payload["generators"] = [
            {"re": g.array.real.tolist(), "im": g.array.imag.tolist()}
            for g in basis.generators
        ]
        text = json.dumps(payload, indent=2) + "\n"
    else:
        lines = ["kind,j,k,l,value"]
        lines += [f"f,{j},{k},{l},{v!r}" for (j, k, l), v in sorted(basis.f_tensor.items())]
        lines += [f"d,{j},{k},{l},{v!r}" for (j, k, l), v in sorted(basis.d_tensor.items())]
        text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        print(f"basis written to {args.out}")
    else:
        sys.stdout.write(text)
    payload["wall_time_s"] = time.perf_counter() - start
    print(
        f"basis dim={args.dim}: {basis.n_generators} generators, "
        f"{len(basis.f_tensor)} f entries, {len(basis.d_tensor)} d entries, "
        f"algebra residual {residual:.2e}",
        file=sys.stderr,
    )
    return EXIT_OK, payload


def _cmd_verify(args, parser) -> tuple[int, dict]:
    dims = _RELATION_DIMS[args.relation]
    if dims is not None and args.dim not in dims:
        parser.error(
            f"relation {args.relation} is not defined for dim {args.dim} "
            f"(allowed: {', '.join(map(str, dims))})"
        )
    if args.dim < 2:
        parser.error("--dim must be at least 2")
    if args.samples < 1:
        parser.error("--samples must be positive")
    threads = _threads()
    start = time.perf_counter()
    summary = _fuzz(args.relation, args.dim, args.samples, args.seed, args.theta_ab, threads)
    wall = time.perf_counter() - start
    report = {
        "schema": SCHEMA_VERSION,
        "command": "verify",
        "config": {
            "relation": args.relation,
            "dim": args.dim,
            "samples": args.samples,
            "seed": args.seed,
            "theta_ab": args.theta_ab,
            "threads": threads,
        },
        "results": [summary],
        "worst_margin": summary["worst_margin"],
        "wall_time_s": wall,
    }
    _write_report(report, args.out)
    status = "PASS" if summary["holds"] else "FAIL"
    print(
        f"verify {args.relation} dim={args.dim} samples={args.samples} "
        f"seed={args.seed} threads={threads}"
    )
    print(
        f"  checks={summary['checks']} worst_margin={summary['worst_margin']:.3e} "
        f"max_abs_margin={summary['max_abs_margin']:.3e} "
        f"saturated={summary['saturated']} -> {status}"
    )
    return (EXIT_OK if summary["holds"] else EXIT_VIOLATION), report


def _cmd_region(args, parser) -> tuple[int, dict]:
    if not 0.0 <= args.theta_ab <= math.pi:
        parser.error(f"--theta-ab must lie in [0, pi], got {args.theta_ab}")
    if not 1e-3 <= args.grid <= 0.1:
        parser.error(f"--grid must lie in [1e-3, 0.1], got {args.grid}")
    if args.samples < 1:
        parser.error("--samples must be positive")
    if args.mode == "triple" and args.ensemble != "pure":
        parser.error("triple scans are defined for pure ensembles only")
    kind = "haar_pure" if args.ensemble == "pure" else "hs_mixed"
    ensemble = SampleConfig(seed=args.seed, dim=2, count=args.samples, kind=kind)
    basis = basis_for(2)
    start = time.perf_counter()
    if args.mode == "pair":
        a = observable_from_bloch(np.array([1.0, 0.0, 0.0]), basis)
        b = observable_from_bloch(
            np.array([math.cos(args.theta_ab), math.sin(args.theta_ab), 0.0]), basis
        )
        scan = scan_pair(a, b, ensemble, args.grid)
    else:
        scan = scan_triple(args.theta_ab, ensemble, args.grid)
    wall = time.perf_counter() - start
    config = {
        "mode": args.mode,
        "theta_ab": args.theta_ab,
        "samples": args.samples,
        "grid": args.grid,
        "seed": args.seed,
        "ensemble": args.ensemble,
        "threads": _threads(),
    }
    finite = scan.margins[np.isfinite(scan.margins)]
    worst = float(finite.min()) if finite.size else None
    report = {
        "schema": SCHEMA_VERSION,
        "command": "region",
        "config": config,
        "results": [
            {
                "axes": list(scan.axes),
                "count": int(scan.samples.shape[0]),
                "occupied_cells": int(scan.occupancy.sum()),
                "worst_margin": worst,
                "max_abs_margin": float(np.abs(finite).max()) if finite.size else None,
            }
        ],
        "worst_margin": worst,
        "wall_time_s": wall,
    }
    print(
        f"region {args.mode} theta_ab={args.theta_ab} samples={args.samples} "
        f"grid={args.grid} seed={args.seed}"
    )
    print(
        f"  occupied_cells={report['results'][0]['occupied_cells']} "
        f"worst_margin={worst if worst is None else format(worst, '.3e')}"
    )
    if args.slice_da2 is not None:
        lo, hi, count = scan.slice_span(0, args.slice_da2)
        report["results"][0]["slice"] = {
            "da2": args.slice_da2,
            "db_min": lo,
            "db_max": hi,
            "count": count,
        }
        print(f"  slice dA2={args.slice_da2}: dB range [{lo:.4f}, {hi:.4f}] ({count} samples)")
    if scan.theta_ab <= 1e-12:
        diff = np.abs(np.sqrt(scan.samples[:, 1]) - np.sqrt(scan.samples[:, 0])).max()
        report["results"][0]["degenerate_line"] = float(diff)
        print(f"  degenerate axis pair: samples collapse onto dB = dA (max |dB-dA| = {diff:.2e})")
    if args.csv:
        _write_scan_csv(args.csv, scan)
        print(f"samples written to {args.csv}")
    if args.json:
        with open(args.json, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(_scan_json(scan, config), fh)
            fh.write("\n")
        print(f"occupancy written to {args.json}")
    _write_report(report, args.out)
    code = EXIT_OK if worst is None or worst >= -1e-9 else EXIT_VIOLATION
    return code, report


def _cmd_compare(args, parser) -> tuple[int, dict]:
    basis = basis_for(2)
    a = _parse_observable(args.obs_a, basis, parser)
    b = _parse_observable(args.obs_b, basis, parser)
    if (args.state is None) == (args.state_seed is None):
        parser.error("provide exactly one of --state or --state-seed")
    if args.state is not None:
        state = _parse_state(args.state, basis, parser)
    else:
        state = draw_pure(Xoshiro256pp(args.state_seed), basis)
    start = time.perf_counter()
    rows: list[dict] = []
    margins: list[float] = []

    rb = robertson_bound(a, b, state)
    rows.append(
        {
            "bound": "robertson",
            "applicable": True,
            "lhs": rb.lhs,
            "rhs": rb.rhs,
            "margin": rb.margin,
            "holds": rb.holds,
        }
    )
    margins.append(rb.margin)
    for sign, name in ((1, "state_dependent_plus"), (-1, "state_dependent_minus")):
        try:
            v = state_dependent_bound(a, b, state, sign)
            rows.append(
                {
                    "bound": name,
                    "applicable": True,
                    "lhs": v.lhs,
                    "rhs": v.rhs,
                    "margin": v.margin,
                    "holds": v.holds,
                }
            )
            margins.append(v.margin)
        except NotApplicable as exc:
            rows.append({"bound": name, "applicable": False, "reason": str(exc)})

    unit = abs(a.norm2 - 1.0) <= 1e-9 and abs(b.norm2 - 1.0) <= 1e-9
    if unit:
        theta = math.acos(min(1.0, max(-1.0, float(a.a @ b.a))))
        folded = theta > math.pi / 2.0
        theta_f = math.pi - theta if folded else theta
        da2 = args.da2 if args.da2 is not None else variance_matrix(a, state)
        da2 = min(max(da2, 0.0), 1.0)
        span_given = db_span_given_da2(theta_f, da2)
        span_any = db_span_any_state(theta_f)
        rows.append(
            {
                "bound": "axis_angle_span",
                "applicable": True,
                "theta_ab": theta,
                "folded": folded,
                "da2": da2,
                "da2_source": "flag" if args.da2 is not None else "state",
                "span_db_given_da2": list(span_given),
                "span_db_any_state": list(span_any),
            }
        )
    else:
        rows.append(
            {
                "bound": "axis_angle_span",
                "applicable": False,
                "reason": "span form needs unit-norm observables",
            }
        )

    report = {
        "schema": SCHEMA_VERSION,
        "command": "compare",
        "config": {
            "state": args.state,
            "state_seed": args.state_seed,
            "A": args.obs_a,
            "B": args.obs_b,
            "da2": args.da2,
        },
        "results": rows,
        "worst_margin": min(margins) if margins else None,
        "wall_time_s": time.perf_counter() - start,
    }
    print(f"compare A={args.obs_a} B={args.obs_b} state={args.state or f'seed:{args.state_seed}'}")
    for row in rows:
        if not row["applicable"]:
            print(f"  {row['bound']:<24} not applicable: {row['reason']}")
        elif row["bound"] == "axis_angle_span":
            lo, hi = row["span_db_given_da2"]
            alo, ahi = row["span_db_any_state"]
            print(
                f"  {row['bound']:<24} theta_ab={row['theta_ab']:.6f} dA2={row['da2']:.6f} "
                f"dB in [{lo:.4f}, {hi:.4f}] given dA2; [{alo:.4f}, {ahi:.4f}] over all states"
            )
        else:
            print(
                f"  {row['bound']:<24} lhs={row['lhs']:.6f} rhs={row['rhs']:.6f} "
                f"margin={row['margin']:.3e} holds={row['holds']}"
            )
    _write_report(report, args.out)
    ok = all(row.get("holds", True) for row in rows if row["applicable"])
    return (EXIT_OK if ok else EXIT_VIOLATION), report


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="blochvar",
        description="Bloch-vector variance relations: bases, fuzzing, regions, comparisons.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_basis = sub.add_parser(
        "basis",
        aliases=["structure-consts"],
        help="serialize su(N) generators and structure tensors",
    )
    p_basis.add_argument("--dim", type=int, required=True, help="Hilbert-space dimension (2..8)")
    p_basis.add_argument("--format", choices=("json", "csv"), default="json")
    p_basis.add_argument("--out", default=None, help="output path (default: stdout)")

    p_verify = sub.add_parser("verify", help="fuzz one relation over seeded random draws")
    p_verify.add_argument("relation", choices=sorted(_RELATION_DIMS))
    p_verify.add_argument("--dim", type=int, default=2)
    p_verify.add_argument("--samples", type=int, default=1000)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument(
        "--theta-ab",
        type=float,
        default=math.pi / 4.0,
        help="axis angle in radians (three-obs-equality only)",
    )
    p_verify.add_argument("--out", default=None, help="write the JSON report here")

    p_region = sub.add_parser("region", help="Monte-Carlo scan of a variance region")
    p_region.add_argument("mode", choices=("pair", "triple"))
    p_region.add_argument("--theta-ab", type=float, required=True, help="axis angle in radians")
    p_region.add_argument("--samples", type=int, default=20000)
    p_region.add_argument("--grid", type=float, default=0.01)
    p_region.add_argument("--seed", type=int, default=0)
    p_region.add_argument("--ensemble", choices=("pure", "mixed"), default="pure")
    p_region.add_argument("--slice-da2", type=float, default=None, help="report the dB span at this dA2")
    p_region.add_argument("--csv", default=None, help="write per-sample CSV here")
    p_region.add_argument("--json", default=None, help="write occupancy JSON here")
    p_region.add_argument("--out", default=None, help="write the JSON report here")

    p_compare = sub.add_parser("compare", help="compare bounds for one (state, A, B) triple")
    p_compare.add_argument("--state", default=None, help="mixed | pure:(x,y,z) | bloch:(x,y,z) | seed:K | @file | {json}")
    p_compare.add_argument("--state-seed", type=int, default=None, help="Haar-random pure state from this seed")
    p_compare.add_argument("--A", dest="obs_a", required=True, help="sigma1|sigma2|sigma3 | n:(x,y,z) | @file | {json}")
    p_compare.add_argument("--B", dest="obs_b", required=True)
    p_compare.add_argument("--da2", type=float, default=None, help="hypothetical dA2 for the span column")
    p_compare.add_argument("--out", default=None, help="write the JSON report here")
    return parser


def run(argv=None) -> tuple[int, dict]:
    """Parse and execute; returns (exit_code, report).

    Usage errors raise SystemExit(2) via argparse.
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command in ("basis", "structure-consts"):
        return _cmd_basis(args, parser)
    if args.command == "verify":
        return _cmd_verify(args, parser)
    if args.command == "region":
        return _cmd_region(args, parser)
    return _cmd_compare(args, parser)


def main(argv=None) -> int:
    return run(argv)[0]


if __name__ == "__main__":
    sys.exit(main())
