"""Command-line front end: simulate, verify, sweep, allocate, algebra.

Exit codes: 0 success, 1 usage/config error, 2 verification failure.  The
default seed is DEFAULT_SEED, overridable with the BSCS_SEED environment
variable or --seed.  Commands validate all input before computing and write
output files in one shot, so a failed run never leaves partial files.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace

import numpy as np

from . import bscs, network
from . import tropical as tp
from .dynamics import lyapunov_estimate

DEFAULT_SEED = 2023


def _seed_default() -> int:
    return int(os.environ.get("BSCS_SEED", DEFAULT_SEED))


def _load_station(path: str | None) -> bscs.StationParams:
    if path is None:
        return bscs.default_station()
    with open(path) as fh:
        return bscs.station_from_config(json.load(fh))


def _fmt(v: float) -> str:
    return f"{v:.10g}"


def cmd_simulate(args) -> int:
    params = _load_station(args.config)
    trace = bscs.simulate_recurrence(params, args.k, args.seed)
    exact = bscs.mean_cycle_time_exact(params)
    if args.figure:
        text = bscs.format_figure_csv(trace, args.stride, exact)
    else:
        text = bscs.format_trace_csv(trace, args.stride)
    with open(args.out, "w") as fh:
        fh.write(text)
    print(f"lambda_hat({args.k}) = {_fmt(trace.lambda_hat[-1])}")
    print(f"exact = {_fmt(exact)}")
    print(f"wrote {args.out}")
    return 0


def cmd_verify(args) -> int:
    params = _load_station(args.config)
    exact = bscs.mean_cycle_time_exact(params)
    est = lyapunov_estimate(bscs.matrix_process(params), args.k, args.reps, args.seed)
    rel_err = abs(est.estimate - exact) / exact if exact != 0 else abs(est.estimate)
    eq_horizon = min(200, args.k)
    equivalent = bscs.scalar_vs_matrix_equivalence(params, eq_horizon, args.seed)
    passed = rel_err <= args.tol and equivalent

    report = {
        "estimate": est.estimate,
        "stderr": est.stderr,
        "exact": exact,
        "rel_error": rel_err,
        "tolerance": args.tol,
        "horizon": args.k,
        "replications": args.reps,
        "seed": args.seed,
        "equivalence_horizon": eq_horizon,
        "equivalence": equivalent,
        "pass": passed,
    }
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(report, fh, indent=2)
            fh.write("\n")
    print(f"estimate   {_fmt(est.estimate)}")
    print(f"exact      {_fmt(exact)}")
    print(f"rel_error  {rel_err:.3e}")
    print(f"stderr     {est.stderr:.3e}")
    print(f"equivalence(K={eq_horizon})  {'PASS' if equivalent else 'FAIL'}")
    print(f"verdict    {'PASS' if passed else 'FAIL'} (tol {args.tol:g})")
    return 0 if passed else 2


def _vary_station(params: bscs.StationParams, name: str, value: float,
                  ) -> bscs.StationParams:
    if name == "b":
        return replace(params, b=float(value))
    if name == "c":
        return replace(params, c=float(value))
    if name == "m":
        if value != int(value):
            raise ValueError(f"battery count must be an integer, got {value}")
        return replace(params, m=int(value))
    # name == "a": move the distribution mean, keeping its shape
    dist = params.dist
    if isinstance(dist, bscs.Exponential):
        return replace(params, dist=bscs.Exponential(float(value)))
    if isinstance(dist, bscs.Deterministic):
        return replace(params, dist=bscs.Deterministic(float(value)))
    shift = float(value) - dist.mean_value
    return replace(params, dist=bscs.Uniform(dist.lo + shift, dist.hi + shift))


def cmd_sweep(args) -> int:
    params = _load_station(args.config)
    values = [float(v) for v in args.values.split(",") if v.strip() != ""]
    swept = [_vary_station(params, args.vary, v) for v in values]

    lines = ["value,exact,estimate,rel_error"]
    for value, p in zip(values, swept):
        exact = bscs.mean_cycle_time_exact(p)
        est = lyapunov_estimate(bscs.matrix_process(p), args.k, args.reps, args.seed)
        rel = abs(est.estimate - exact) / exact if exact != 0 else abs(est.estimate)
        lines.append(f"{value:g},{_fmt(exact)},{_fmt(est.estimate)},{rel:.3e}")
        print(lines[-1])
    with open(args.out, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    print(f"wrote {args.out}")
    return 0


def cmd_allocate(args) -> int:
    with open(args.config) as fh:
        stations, total = network.stations_from_config(json.load(fh))
    if args.m is not None:
        total = args.m
    if total is None:
        raise ValueError("fleet size missing: set \"M\" in the config or pass --m")

    plan = network.allocate_heuristic(stations, total)
    out = plan.to_jsonable()
    if args.oracle:
        best = network.allocate_bruteforce(stations, total)
        gap = best.total_income_rate - plan.total_income_rate
        rel_gap = gap / best.total_income_rate if best.total_income_rate > 0 else 0.0
        out["oracle"] = {"counts": list(best.counts),
                         "objective": best.total_income_rate,
                         "gap": gap, "relative_gap": rel_gap}
        print(f"oracle objective {_fmt(best.total_income_rate)} "
              f"(gap {gap:.3e}, relative {rel_gap:.3e})")
    with open(args.out, "w") as fh:
        json.dump(out, fh, indent=2)
        fh.write("\n")
    print(f"counts {list(plan.counts)}")
    print(f"objective {_fmt(plan.total_income_rate)}")
    if plan.warning:
        print(f"warning: {plan.warning}")
    print(f"wrote {args.out}")
    return 0


def _scalar_out(v: float):
    return v if np.isfinite(v) else "-inf"


def cmd_algebra(args) -> int:
    op = args.op
    first = tp.from_json(json.loads(args.operands[0]))

    def second():
        if len(args.operands) < 2:
            raise ValueError(f"algebra op {op!r} needs two operands")
        return json.loads(args.operands[1])

    if op == "add":
        result = tp.madd(first, tp.from_json(second()))
    elif op == "mul":
        rhs = tp.from_json(second())
        result = tp.matvec(first, rhs) if rhs.ndim == 1 else tp.mmul(first, rhs)
    elif op == "pow":
        result = tp.mpow(first, int(second()))
    elif op == "star":
        result = tp.kleene_star(first)
    elif op == "conj":
        result = tp.conjugate(first)
    elif op == "solve":
        result = tp.solve_bellman(first, tp.from_json(second()))
    elif op == "trace":
        result = tp.trace(first)
    elif op == "cycletrace":
        result = tp.cycle_trace(first)
    elif op == "radius":
        result = tp.spectral_radius(first)
    elif op == "norm":
        result = tp.norm(first)
    else:  # argparse choices guard this
        raise ValueError(f"unknown algebra op: {op}")

    payload = _scalar_out(result) if isinstance(result, float) else tp.to_jsonable(result)
    text = json.dumps(payload)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    print(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bscs",
        description="Battery swapping station cycle-time toolkit "
                    "(max-plus algebra, simulation, verification, allocation)",
        epilog=f"Default seed {DEFAULT_SEED}; override with BSCS_SEED or --seed.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, k_default, reps=None):
        p.add_argument("--config", help="station config JSON "
                                        "(default: exp(25)/b=5/c=100/m=4)")
        p.add_argument("--seed", type=int, default=_seed_default())
        p.add_argument("--k", type=int, default=k_default, help="horizon K")
        if reps is not None:
            p.add_argument("--reps", type=int, default=reps,
                           help="Monte Carlo replications")

    p = sub.add_parser("simulate", help="simulate one station, write a CSV trace")
    add_common(p, 200)
    p.add_argument("--stride", type=int, default=5)
    p.add_argument("--out", default="bscs_trace.csv")
    p.add_argument("--figure", action="store_true",
                   help="two-column figure CSV with an exact,<lambda> sidecar line")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("verify", help="Monte Carlo estimate vs exact cycle time")
    add_common(p, 100_000, reps=20)
    p.add_argument("--tol", type=float, default=0.01,
                   help="relative error gate (statistical)")
    p.add_argument("--out", help="optional JSON report path")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="sweep one parameter, write a CSV table")
    add_common(p, 20_000, reps=5)
    p.add_argument("--vary", required=True, choices=["a", "b", "c", "m"])
    p.add_argument("--values", required=True,
                   help="comma-separated parameter values")
    p.add_argument("--out", default="bscs_sweep.csv")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("allocate", help="distribute a battery fleet over stations")
    p.add_argument("--config", required=True, help="network config JSON")
    p.add_argument("--m", type=int, help="fleet size (overrides config M)")
    p.add_argument("--oracle", action="store_true",
                   help="also run the brute-force oracle and report the gap")
    p.add_argument("--out", default="bscs_plan.json")
    p.set_defaults(func=cmd_allocate)

    p = sub.add_parser("algebra", help="ad-hoc max-plus operations on JSON data")
    p.add_argument("op", choices=["add", "mul", "pow", "star", "conj", "solve",
                                  "trace", "cycletrace", "radius", "norm"])
    p.add_argument("operands", nargs="+",
                   help="JSON matrices/vectors (\"-inf\" for the zero element); "
                        "pow takes an integer exponent")
    p.add_argument("--out", help="optional output path")
    p.set_defaults(func=cmd_algebra)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        return args.func(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
