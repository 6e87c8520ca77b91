"""Command-line front end.

Every subcommand prints one JSON object (``bench`` prints one per line plus
a summary).  Exit codes: 0 success, 2 usage error, 3 input/parse error,
4 contract violation.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .bench import run_bench, run_report, summarize
from .curvefile import parse_curve_file, write_curve_file
from .decide import approx_decider, fallible_decider
from .errors import ContractError, ParseError, UsageError
from .gen import FAMILIES, GenSpec, generate
from .geometry import packedness_lower_bound
from .oracle import bisect_frechet
from .search import approx_frechet
from .simplify import greedy_simplify

EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_CONTRACT = 4


def _default_seed(fallback=0):
    raw = os.environ.get("FRECHET_SEED")
    if raw is None:
        return fallback
    try:
        return int(raw, 0)
    except ValueError:
        raise UsageError(f"FRECHET_SEED must be an integer, got {raw!r}") from None


def _inputs(paths, *curves):
    out = {"paths": list(paths)}
    for key, c in zip(("n", "m"), curves):
        out[key] = len(c)
    out["d"] = curves[0].dim
    return out


def _emit(obj, pretty):
    if pretty:
        _print_table(obj)
    else:
        print(json.dumps(obj, sort_keys=True))


def _print_table(obj, indent=""):
    for key, value in obj.items():
        if isinstance(value, dict):
            print(f"{indent}{key}:")
            _print_table(value, indent + "  ")
        else:
            print(f"{indent}{key:<22} {value}")


def _load_pair(args):
    p = parse_curve_file(args.curve_a)
    q = parse_curve_file(args.curve_b)
    if p.dim != q.dim:
        raise ParseError(f"dimension mismatch: {p.dim} vs {q.dim}", args.curve_b)
    return p, q


def cmd_approx(args):
    p, q = _load_pair(args)
    t0 = time.perf_counter()
    rep = approx_frechet(p, q, args.eps, args.delta_plus)
    wall = 1000.0 * (time.perf_counter() - t0)
    result = {"value": rep.value, "final_c_prime": rep.final_c_prime,
              "over_estimate_used": rep.over_estimate_used,
              "mode": "self_contained" if args.delta_plus is None else "with_estimate"}
    stats = {"cells_explored": rep.total_cells, "decider_calls": rep.decider_calls,
             "wall_time_ms": wall}
    return run_report("approx", _inputs([args.curve_a, args.curve_b], p, q), result, stats)


def cmd_decide(args):
    p, q = _load_pair(args)
    t0 = time.perf_counter()
    if args.c_prime is None:
        dec = approx_decider(p, q, args.delta, args.eps)
    else:
        dec = fallible_decider(p, q, args.delta, args.eps, args.c_prime)
    wall = 1000.0 * (time.perf_counter() - t0)
    result = dec.as_dict()
    result.update(delta=args.delta, eps=args.eps, c_prime=args.c_prime)
    stats = {"cells_explored": dec.cells_explored, "decider_calls": 1, "wall_time_ms": wall}
    return run_report("decide", _inputs([args.curve_a, args.curve_b], p, q), result, stats)


def cmd_exact(args):
    p, q = _load_pair(args)
    t0 = time.perf_counter()
    br = bisect_frechet(p, q, args.rel_tol)
    wall = 1000.0 * (time.perf_counter() - t0)
    return run_report(
        "exact",
        _inputs([args.curve_a, args.curve_b], p, q),
        {"lo": br.lo, "hi": br.hi, "rel_tol": args.rel_tol},
        {"wall_time_ms": wall},
    )


def cmd_simplify(args):
    p = parse_curve_file(args.curve)
    s = greedy_simplify(p, args.mu)
    if args.output is None:
        write_curve_file(s.curve)
        return None
    write_curve_file(s.curve, args.output)
    return run_report(
        "simplify",
        {"paths": [args.curve], "n": len(p), "d": p.dim},
        {"mu": args.mu, "size": len(s.curve), "source_indices": list(s.source_indices),
         "output": args.output},
        {},
    )


def cmd_pack_estimate(args):
    p = parse_curve_file(args.curve)
    t0 = time.perf_counter()
    value = packedness_lower_bound(p, args.trials, seed=_default_seed())
    wall = 1000.0 * (time.perf_counter() - t0)
    return run_report(
        "pack-estimate",
        {"paths": [args.curve], "n": len(p), "d": p.dim},
        {"packedness_lower_bound": value, "trials": args.trials},
        {"wall_time_ms": wall},
    )


def _parse_params(items):
    params = {}
    for item in items or []:
        key, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"--param expects key=value, got {item!r}")
        params[key] = float(value)
    return params


def cmd_gen(args):
    seed = args.seed if args.seed is not None else _default_seed()
    base = parse_curve_file(args.base) if args.base else None
    curve = generate(GenSpec(args.family, args.n, args.d, seed, _parse_params(args.param)), base)
    if args.output is None:
        write_curve_file(curve)
        return None
    write_curve_file(curve, args.output)
    return run_report(
        "gen",
        {"family": args.family, "n": args.n, "d": args.d, "seed": seed},
        {"output": args.output, "size": len(curve)},
        {},
    )


def cmd_bench(args):
    try:
        with open(args.suite, encoding="utf-8") as fh:
            suite = json.load(fh)
    except OSError as exc:
        raise ParseError(exc.strerror or str(exc), args.suite) from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", args.suite, exc.lineno) from None
    seed = args.seed if args.seed is not None else (
        _default_seed() if "FRECHET_SEED" in os.environ else None
    )
    reports = []
    for rep in run_bench(suite, seed=seed, svg_dir=args.emit_svg, workers=args.workers):
        reports.append(rep)
        _emit(rep, args.pretty)
        sys.stdout.flush()
    _emit({"summary": summarize(reports)}, args.pretty)
    return None


def build_parser():
    parser = argparse.ArgumentParser(
        prog="packfrechet",
        description="(1+eps)-approximate Fréchet distance for curves with one c-packed side.",
    )
    parser.add_argument("--pretty", action="store_true", help="human-readable output")
    sub = parser.add_subparsers(dest="command", required=True)

    def pair(p):
        p.add_argument("curve_a")
        p.add_argument("curve_b")

    p = sub.add_parser("approx", help="approximate the Fréchet distance")
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--delta-plus", type=float, default=None,
                   help="known over-estimate; switches to the halving search")
    pair(p)
    p.set_defaults(func=cmd_approx)

    p = sub.add_parser("decide", help="run one approximate decision")
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--c-prime", type=float, default=None,
                   help="packedness guess; enables the budgeted (fallible) decider")
    pair(p)
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("exact", help="bracket the exact distance by bisection")
    p.add_argument("--rel-tol", type=float, default=1e-9)
    pair(p)
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("simplify", help="greedy mu-simplification")
    p.add_argument("--mu", type=float, required=True)
    p.add_argument("-o", "--output", default=None)
    p.add_argument("curve")
    p.set_defaults(func=cmd_simplify)

    p = sub.add_parser("pack-estimate", help="lower bound on packedness")
    p.add_argument("--trials", type=int, default=16)
    p.add_argument("curve")
    p.set_defaults(func=cmd_pack_estimate)

    p = sub.add_parser("gen", help="generate a seeded curve")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--param", action="append", metavar="KEY=VALUE")
    p.add_argument("--base", default=None, help="base curve for perturbed_copy")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="run a benchmark suite (JSON)")
    p.add_argument("suite")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--emit-svg", metavar="DIR", default=None)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ContractError as exc:
        print(f"contract violation: {exc}", file=sys.stderr)
        return EXIT_CONTRACT
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if report is not None:
        _emit(report, args.pretty)
    return 0


if __name__ == "__main__":
    sys.exit(main())
