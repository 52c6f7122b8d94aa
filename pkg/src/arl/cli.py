"""Unified command-line front end.

Subcommands: count, matching-search, behrend, extract, removal, reduce,
bounds, experiment, generate.  JSON is the canonical output format; CSV is
a row projection for the tabular commands (extract, experiment, bounds).
Primary output is byte-deterministic for a fixed config and seed; wall
clock metadata goes to a ``<output>.meta.json`` sidecar, never into the
primary stream.  Set ARL_LOG to a level name for diagnostics on stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import bounds as bounds_mod
from .errors import ArlError, ParameterRangeError, SearchBudgetExceededError
from .extraction import (ExtractionParams, estimate_claims, extract_matching,
                         params_from_profile, run_trials)
from .generators import generate_instance, parse_generator_spec
from .group import IndexedTripleFamily, Modulus, TripleSystem
from .matching import (behrend_construction, matching_from_progression_free,
                       max_matching_exhaustive, minimal_admissible_modulus,
                       verify_matching)
from .reductions import (IntegerTripleSystem, embed_interval, lift_and_split,
                         verify_preservation)
from .removal import epsilon_delta_experiment, min_deletion_exact
from .triangles import count_triangles_convolution, degree_profile

log = logging.getLogger("arl.cli")


def _json_text(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _csv_text(fieldnames, rows) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=fieldnames, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: _csv_cell(row.get(k)) for k in fieldnames})
    return buffer.getvalue()


def _csv_cell(value):
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, Fraction):
        return str(value)
    return value


def _load_system(path: str) -> TripleSystem:
    return TripleSystem.from_json_dict(json.loads(Path(path).read_text()))


def _load_family(path: str) -> IndexedTripleFamily:
    return IndexedTripleFamily.from_json_dict(json.loads(Path(path).read_text()))


def _emit(args, text: str):
    if args.output:
        Path(args.output).write_text(text)
        meta = {"command": args.command, "written": args.output,
                "timestamp": time.strftime("%Y-%m-%dT%H:%M:%S%z"),
                "duration_s": round(time.monotonic() - args._t0, 6)}
        Path(args.output + ".meta.json").write_text(_json_text(meta))
    else:
        sys.stdout.write(text)


def _fraction_arg(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc


# ---------------------------------------------------------------- subcommands

def _cmd_count(args) -> str:
    system = _load_system(args.input)
    profile = degree_profile(system)
    payload = {"count": count_triangles_convolution(system),
               "deg_min": [b[0] if (b := profile.bounds(i)) else None for i in range(3)],
               "deg_max": [b[1] if (b := profile.bounds(i)) else None for i in range(3)]}
    return _json_text(payload)


def _cmd_matching_search(args) -> str:
    try:
        result = max_matching_exhaustive(Modulus(args.n), budget=args.budget)
        payload = {"size": result.size, "exact": True,
                   "witness": [list(t) for t in result.witness],
                   "nodes": result.nodes}
    except SearchBudgetExceededError as exc:
        payload = {"size": exc.best_size, "exact": False,
                   "witness": [list(t) for t in exc.best_witness],
                   "nodes": exc.nodes}
    return _json_text(payload)


def _cmd_behrend(args) -> str:
    pf = behrend_construction(args.d, args.digits)
    modulus = args.modulus or minimal_admissible_modulus(pf)
    family = matching_from_progression_free(pf, Modulus(modulus))
    certificate = verify_matching(family)
    payload = {"set": list(pf), "span": pf.span, "modulus": modulus,
               "matching": [list(t) for t in family],
               "verified": certificate.verified}
    return _json_text(payload)


def _extraction_params(args, system) -> ExtractionParams:
    if args.delta1 is not None and args.delta2 is not None:
        low = args.ratio_low if args.ratio_low is not None else Fraction(1, 20)
        high = args.ratio_high if args.ratio_high is not None else Fraction(1, 10)
        return ExtractionParams.from_deltas(args.delta1, args.delta2, low, high)
    return params_from_profile(system)


def _cmd_extract(args) -> str:
    system = _load_system(args.input)
    params = _extraction_params(args, system)
    best = extract_matching(system, args.trials, args.seed, params)
    payload = {
        "n": system.n, "trials": args.trials, "seed": args.seed,
        "params": {"delta1": str(params.delta1), "delta2": str(params.delta2),
                   "L": params.length, "l": params.half_length,
                   "small_modulus": params.small_modulus},
        "best": {"trial": best.trial,
                 "window": {"a": best.window.a, "b": best.window.b, "d": best.window.d},
                 "valid": best.valid_count, "good": best.good_count,
                 "matching": best.good_triples_small.to_json_dict(),
                 "verified": best.certificate.verified},
    }
    if args.claims:
        stats = estimate_claims(system, params, args.trials, args.seed)
        payload["claims"] = {
            "good_given_valid": _claim_dict(stats.good_given_valid),
            "good_given_window_x": _claim_dict(stats.good_given_window_x),
            "mean_good_x": _claim_dict(stats.mean_good_x),
            "valid_total": stats.valid_total, "good_total": stats.good_total,
        }
    if args.format == "csv" or args.plot:
        reports = run_trials(system, params, args.trials, args.seed)
        if args.plot:
            from .plots import save_extraction_figure
            save_extraction_figure(reports, args.plot)
        if args.format == "csv":
            fields = ["trial", "a", "b", "d", "valid", "good", "x_in_window",
                      "good_fraction"]
            rows = [{"trial": r.trial, "a": r.window.a, "b": r.window.b,
                     "d": r.window.d, "valid": r.valid_count, "good": r.good_count,
                     "x_in_window": r.x_window_count,
                     "good_fraction": r.good_fraction} for r in reports]
            return _csv_text(fields, rows)
    return _json_text(payload)


def _claim_dict(estimate) -> dict:
    return {"empirical": estimate.empirical, "bound": estimate.bound,
            "stderr": estimate.stderr, "samples": estimate.samples,
            "satisfied": estimate.satisfied()}


def _cmd_removal(args) -> str:
    system = _load_system(args.input)
    result = min_deletion_exact(system, budget=args.budget)
    return _json_text(result.to_json_dict())


def _cmd_reduce(args) -> str:
    if args.action == "embed":
        data = json.loads(Path(args.input).read_text())
        integer_system = IntegerTripleSystem.from_json_dict(data)
        embedded = embed_interval(integer_system)
        return _json_text({"prime": embedded.n, "system": embedded.to_json_dict()})
    if args.action == "lift":
        system = _load_system(args.input)
        family = _load_family(args.family)
        result = lift_and_split(system, family)
        return _json_text(result.to_json_dict())
    report = verify_preservation(args.max, args.max)
    return _json_text(report.to_json_dict())


def _parse_profile(text: str) -> bounds_mod.DensityBoundProfile:
    head, _, tail = text.partition(":")
    params = dict(piece.split("=", 1) for piece in tail.split(",") if piece)
    if head == "behrend":
        return bounds_mod.DensityBoundProfile.behrend(
            c=float(params.get("c", 1.0)),
            alpha=float(params.get("alpha", bounds_mod.DEFAULT_ALPHA)))
    if head in ("polylog", "poly_log"):
        return bounds_mod.DensityBoundProfile.poly_log(
            gamma=float(params["gamma"]),
            alpha=float(params.get("alpha", bounds_mod.DEFAULT_ALPHA)))
    raise ParameterRangeError(f"unknown profile {text!r}", profile=text)


def _parse_companion(text: str, k_required: bool = True) -> bounds_mod.CompanionFunction:
    head, _, tail = text.partition(":")
    params = dict(piece.split("=", 1) for piece in tail.split(",") if piece)
    if head == "sqlog":
        exponent = 2.0
    elif head == "powlog":
        exponent = 1.0 + float(params["gamma"]) / 3.0
    else:
        raise ParameterRangeError(f"unknown companion {text!r}", companion=text)
    if "k" not in params:
        if k_required:
            raise ParameterRangeError(f"companion {text!r} needs k=...", companion=text)
        return bounds_mod.CompanionFunction(1.0, exponent)
    return bounds_mod.CompanionFunction(float(params["k"]), exponent)


def _parse_grid(text: str) -> list:
    if ":" in text:
        lo_text, hi_text = text.split(":", 1)

        def exponent(piece: str) -> int:
            piece = piece.strip()
            if not piece.startswith("2^"):
                raise ParameterRangeError(f"grid endpoints look like 2^-10, got {piece!r}")
            return -int(piece[2:])
        return bounds_mod.dyadic_grid(exponent(lo_text), exponent(hi_text))
    return sorted((float(v) for v in text.split(",")), reverse=True)


def _cmd_bounds(args) -> str:
    if args.action == "min-k":
        companion = _parse_companion(args.companion, k_required=False)
        k_min = bounds_mod.minimal_series_k(companion.exponent)
        return _json_text({"k_min": k_min, "exponent": companion.exponent})
    if args.action == "envelope":
        grid = [int(v) for v in args.m_grid.split(",")]
        rows = bounds_mod.behrend_lower_envelope(grid)
        if args.format == "csv":
            fields = ["m", "d", "digits", "size", "density", "fitted_c"]
            return _csv_text(fields, rows)
        return _json_text({"rows": rows})
    profile = _parse_profile(args.profile)
    companion = _parse_companion(args.companion)
    grid = _parse_grid(args.grid)
    rows = bounds_mod.evaluate_grid(profile, companion, grid)
    series = bounds_mod.series_condition(companion)
    monotone = bounds_mod.monotone_condition(profile, companion, grid)
    if args.plot:
        from .plots import save_bounds_figure
        save_bounds_figure(rows, args.plot)
    if args.format == "csv":
        fields = ["rho", "g", "h", "epsilon_bound", "series_pass", "monotone_pass"]
        csv_rows = [dict(r, series_pass=series.passes, monotone_pass=monotone.passes)
                    for r in rows]
        return _csv_text(fields, csv_rows)
    payload = {"rows": rows, "series": series.to_json_dict(),
               "monotone": {"passes": monotone.passes,
                            "first_violation": list(monotone.first_violation)
                            if monotone.first_violation else None}}
    if args.check_all:
        payload["shape"] = profile.shape_report([1.0 / (companion.value(r) * r)
                                                 for r in grid])
    return _json_text(payload)


def _cmd_experiment(args) -> str:
    spec = parse_generator_spec(args.gen)
    bound_fn = None
    if args.profile and args.companion:
        profile = _parse_profile(args.profile)
        companion = _parse_companion(args.companion)

        def bound_fn(delta: float) -> float:
            return bounds_mod.epsilon_bound(delta, profile, companion)

    rows = epsilon_delta_experiment(
        lambda n: generate_instance(spec, n, args.seed),
        args.sizes, bound_fn=bound_fn, budget=args.budget)
    if args.plot:
        from .plots import save_experiment_figure
        save_experiment_figure(rows, args.plot)
    if args.format == "csv":
        fields = ["n", "delta", "epsilon", "predicted_bound", "exact", "status"]
        csv_rows = [{"n": r.n,
                     "delta": None if r.delta is None else float(r.delta),
                     "epsilon": None if r.epsilon is None else float(r.epsilon),
                     "predicted_bound": r.predicted_bound,
                     "exact": r.exact, "status": r.status} for r in rows]
        return _csv_text(fields, csv_rows)
    return _json_text({"rows": [r.to_json_dict() for r in rows]})


def _cmd_generate(args) -> str:
    system = generate_instance(args.gen, args.n, args.seed)
    return _json_text(system.to_json_dict())


# -------------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="arl",
        description="Triangles, additive matchings, and removal numbers in Z/NZ.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="64-bit RNG seed")
    common.add_argument("--format", choices=("json", "csv"), default="json",
                        help="json is canonical; csv projects tabular commands")
    common.add_argument("--output", help="write primary output to this file "
                                         "(plus a .meta.json sidecar)")
    common.add_argument("--threads", type=int, default=1,
                        help="cap worker parallelism (operations currently "
                             "run sequentially; accepted for config stability)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", parents=[common],
                       help="triangle count and degree summary of a system")
    p.add_argument("--input", required=True, help="TripleSystem JSON path")
    p.set_defaults(run=_cmd_count)

    p = sub.add_parser("matching-search", parents=[common],
                       help="exact maximum additive matching in Z/nZ")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--budget", type=int, default=5_000_000,
                   help="search node budget")
    p.set_defaults(run=_cmd_matching_search)

    p = sub.add_parser("behrend", parents=[common],
                       help="digit-sphere progression-free set and its matching")
    p.add_argument("--d", type=int, required=True, help="digit bound, >= 2")
    p.add_argument("--digits", type=int, required=True, help="digit count, >= 1")
    p.add_argument("--modulus", type=int, help="embedding modulus (default 2*span)")
    p.set_defaults(run=_cmd_behrend)

    p = sub.add_parser("extract", parents=[common],
                       help="random-window matching extraction with claim stats")
    p.add_argument("--input", required=True)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--claims", action="store_true",
                   help="include Monte Carlo claim statistics")
    p.add_argument("--delta1", type=_fraction_arg, help="override min degree / N")
    p.add_argument("--delta2", type=_fraction_arg, help="override max degree / N")
    p.add_argument("--ratio-low", type=_fraction_arg,
                   help="advanced: lower endpoint for L*delta2 (default 1/20)")
    p.add_argument("--ratio-high", type=_fraction_arg,
                   help="advanced: upper endpoint for L*delta2 (default 1/10)")
    p.add_argument("--plot", help="write a per-trial histogram PNG here")
    p.set_defaults(run=_cmd_extract)

    p = sub.add_parser("removal", parents=[common],
                       help="exact minimum deletion number")
    p.add_argument("--input", required=True)
    p.add_argument("--budget", type=int, default=2_000_000,
                   help="branch-and-bound node budget")
    p.set_defaults(run=_cmd_removal)

    p = sub.add_parser("reduce", parents=[common],
                       help="interval embedding / lift-and-split / exhaustive checks")
    p.add_argument("action", choices=("embed", "lift", "verify"))
    p.add_argument("--input", help="system JSON (embed: integer system)")
    p.add_argument("--family", help="disjoint triangle family JSON (lift)")
    p.add_argument("--max", type=int, default=50,
                   help="exhaustive verification cap (verify)")
    p.set_defaults(run=_cmd_reduce)

    p = sub.add_parser("bounds", parents=[common],
                       help="profile curves, series and monotonicity checks")
    p.add_argument("action", nargs="?", choices=("evaluate", "min-k", "envelope"),
                   default="evaluate")
    p.add_argument("--profile", default="behrend:c=1",
                   help="behrend:c=... | polylog:gamma=... [,alpha=...]")
    p.add_argument("--companion", default="sqlog:k=14",
                   help="sqlog:k=... | powlog:k=...,gamma=...")
    p.add_argument("--grid", default="2^-10:2^-40",
                   help="dyadic range 2^-A:2^-B or comma-separated rhos")
    p.add_argument("--m-grid", default="10,34,158",
                   help="comma-separated group orders (envelope)")
    p.add_argument("--check-all", action="store_true",
                   help="include the profile shape report")
    p.add_argument("--plot", help="write the curve figure PNG here")
    p.set_defaults(run=_cmd_bounds)

    p = sub.add_parser("experiment", parents=[common],
                       help="(delta, epsilon) table over generated instances")
    p.add_argument("--gen", required=True, help="instance generator spec")
    p.add_argument("--sizes", type=int, nargs="+", required=True)
    p.add_argument("--profile", help="optional bound profile for the predicted column")
    p.add_argument("--companion", help="companion for the predicted column")
    p.add_argument("--budget", type=int, default=2_000_000)
    p.add_argument("--plot", help="write the scatter figure PNG here")
    p.set_defaults(run=_cmd_experiment)

    p = sub.add_parser("generate", parents=[common],
                       help="emit a deterministic instance as TripleSystem JSON")
    p.add_argument("--gen", required=True, help="instance generator spec")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(run=_cmd_generate)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=os.environ.get("ARL_LOG", "WARNING").upper(),
                        stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    args._t0 = time.monotonic()
    if args.threads < 1:
        parser.error("--threads must be >= 1")
    try:
        text = args.run(args)
    except ArlError as exc:
        log.debug("command failed", exc_info=True)
        sys.stderr.write(_json_text(exc.to_json_dict()))
        return 1
    _emit(args, text)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
