"""Command-line front end. Every subcommand prints a single JSON object to
stdout; grid sweeps emit CSV. Exit codes: 0 success, 1 domain/convergence
error (structured error JSON), 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import itertools
import json
import math
import os
import sys

from . import __version__, cgf, checks, concentration, montecarlo, process, rates

SCHEMA_VERSION = "1"


def _default_workers() -> int:
    try:
        return max(1, int(os.environ.get("OUDRIFT_WORKERS", "1")))
    except ValueError:
        return 1


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, (int, str)) or obj is None:
        return obj
    x = float(obj)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return x


def _emit(result: dict) -> int:
    result["schema_version"] = SCHEMA_VERSION
    print(json.dumps(_jsonable(result)))
    return 0


def _rate_fields(rv: rates.RateValue) -> dict:
    return {"rate": math.inf if rv.value is None else rv.value, "branch": rv.branch}


# ---------------------------------------------------------------------------
# subcommand handlers


def cmd_simulate(args) -> dict:
    model = process.OuModel(theta=args.theta, horizon=args.T)
    grid = process.GridSpec(args.n_steps) if args.n_steps else process.default_grid(model)
    p = process.simulate_path(model, grid, args.seed, args.path_index)
    return {
        "theta": args.theta, "T": args.T, "x_T": p.x_T, "s_T": p.s_T,
        "n_steps": p.n_steps, "seed": p.seed, "path_index": p.path_index,
    }


def cmd_mle(args) -> dict:
    summary = process.PathSummary(x_T=args.x_T, s_T=args.s_T, n_steps=0, seed=0)
    return {"estimate": process.mle(summary, args.T), "x_T": args.x_T,
            "s_T": args.s_T, "T": args.T}


def cmd_cgf(args) -> dict:
    out = {"theta": args.theta, "a": args.a, "b": args.b, "kind": args.kind}
    if args.T is None:
        if args.kind == "squared":
            out["domain"] = cgf.domain_Lambda(args.theta, args.a, args.b)
            out["domain_status"] = cgf.domain_status_Lambda(args.theta, args.a, args.b)
        else:
            out["value"] = cgf.limiting_cgf(args.theta, args.a, args.b)
            out["domain"] = cgf.domain_L(args.theta, args.a, args.b)
            out["domain_status"] = cgf.domain_status_L(args.theta, args.a, args.b)
        return out
    fn = cgf.finite_cgf_W if args.kind == "squared" else cgf.finite_cgf
    v = fn(args.theta, args.T, args.a, args.b)
    out.update({"T": args.T, "value": v.value, "phi": v.phi, "sigma2": v.sigma2,
                "gamma": v.gamma, "status": v.status})
    if args.kind == "squared":
        out["extrapolated"] = v.extrapolated
    return out


def cmd_rate(args) -> dict:
    if args.z is not None:
        if args.x is not None or args.y is not None:
            raise ValueError("give either --z or the pair --x/--y, not both")
        return {"theta": args.theta, "z": args.z,
                **_rate_fields(rates.mle_rate(args.theta, args.z))}
    if args.x is None or args.y is None:
        raise ValueError("need --z for the estimator rate or --x and --y for the couple rate")
    return {"theta": args.theta, "x": args.x, "y": args.y,
            **_rate_fields(rates.joint_rate(args.theta, args.x, args.y))}


def cmd_legendre(args) -> dict:
    rv = rates.numeric_legendre(args.theta, args.x, args.y, tol=args.tol)
    return {"theta": args.theta, "x": args.x, "y": args.y, "tol": args.tol,
            **_rate_fields(rv)}


def cmd_contract(args) -> dict:
    return {"theta": args.theta, "z": args.z,
            **_rate_fields(rates.contraction_infimum(args.theta, args.z))}


def cmd_ci_bound(args) -> dict:
    fn = concentration.corollary_bound if args.method == "corollary" else concentration.ci_bound
    r = fn(args.theta, args.T, args.x)
    out = {"theta": args.theta, "T": args.T, "x": args.x, "bound": r.bound,
           "log_bound": r.log_bound, "y_star": r.y_star, "h_value": r.h_value,
           "method": r.method, "capped": r.capped}
    if r.monotone:
        out["monotone"] = True
    if r.subcase:
        out["subcase"] = r.subcase
    return out


def cmd_laplace_bound(args) -> dict:
    lb = concentration.log_laplace_upper_bound(args.theta, args.T, args.b)
    return {"theta": args.theta, "T": args.T, "b": args.b,
            "bound": concentration.laplace_upper_bound(args.theta, args.T, args.b),
            "log_bound": lb}


def cmd_mc_tail(args) -> dict:
    model = process.OuModel(theta=args.theta, horizon=args.T)
    grid = process.GridSpec(args.n_steps) if args.n_steps else None
    event = montecarlo.EventSpec(args.event, args.threshold)
    est = montecarlo.estimate_tail(
        model, grid, event, args.n, seed=args.seed, estimator=args.estimator,
        theta_sim=args.theta_sim, workers=args.workers,
    )
    out = {"theta": args.theta, "T": args.T, "event": args.event,
           "threshold": args.threshold, "p_hat": est.p_hat, "se": est.se,
           "n": est.n, "estimator": est.estimator, "seed": args.seed}
    if est.theta_sim is not None:
        out["theta_sim"] = est.theta_sim
    return out


def cmd_ldp_slope(args) -> dict:
    ladder = [float(t) for t in args.T_ladder.split(",")]
    event = montecarlo.EventSpec(args.event, args.threshold)
    rep = montecarlo.ldp_slope(
        args.theta, event, ladder, args.n, seed=args.seed, estimator=args.estimator,
        theta_sim=args.theta_sim, workers=args.workers, n_steps=args.n_steps,
    )
    return {"theta": args.theta, "event": args.event, "threshold": args.threshold,
            "T_ladder": rep.T_ladder, "log_p_over_T": rep.log_p_over_T,
            "extrapolated_slope": rep.extrapolated_slope, "target": rep.target,
            "p_hats": rep.p_hats, "ses": rep.ses, "n_per_T": rep.n_per_T,
            "insufficient": rep.insufficient, "seed": args.seed}


def cmd_check(args) -> dict:
    results = checks.run_suite(args.suite)
    passed = all(c["passed"] for c in results)
    out = {"suite": args.suite, "passed": passed, "checks": results}
    if not passed:
        raise CheckFailure(out)
    return out


class CheckFailure(Exception):
    def __init__(self, result):
        self.result = result


# ---------------------------------------------------------------------------
# sweep


def _parse_axis(spec: str):
    try:
        name, rng = spec.split("=", 1)
        start, stop, count = rng.split(":")
        return name, float(start), float(stop), int(count)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"axis must look like name=start:stop:count, got {spec!r}"
        )


def _axis_values(start, stop, count):
    if count == 1:
        return [start]
    step = (stop - start) / (count - 1)
    return [start + i * step for i in range(count)]


def _fmt(x) -> str:
    if isinstance(x, bool):
        return str(x).lower()
    if isinstance(x, (int, float)):
        return f"{x:.12g}"
    return str(x)


def cmd_sweep(args, extra) -> int:
    target = args.target
    if target not in SWEEPABLE:
        raise ValueError(f"sweep target must be one of {sorted(SWEEPABLE)}")
    axes = [_parse_axis(s) for s in args.axis]
    parser = build_parser()
    cells = []
    for combo in itertools.product(*(_axis_values(*ax[1:]) for ax in axes)):
        argv = [target]
        for (name, *_), value in zip(axes, combo):
            argv += [f"--{name}", repr(value)]
        argv += extra
        ns = parser.parse_args(argv)
        try:
            result = SWEEPABLE[target](ns)
        except (ValueError, OverflowError, RuntimeError, ZeroDivisionError):
            result = None
        cells.append((combo, result))
    out_cols = sorted(
        {k for _, r in cells if r for k, v in r.items()
         if isinstance(v, (int, float, bool)) and not isinstance(v, bool)}
        - {ax[0] for ax in axes}
    )
    header = [ax[0] for ax in axes] + out_cols
    rows = []
    for combo, result in cells:
        row = [_fmt(v) for v in combo]
        for col in out_cols:
            val = result.get(col, math.nan) if result else math.inf
            row.append(_fmt(val))
        rows.append(row)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(header)
            w.writerows(rows)
        return _emit({"target": target, "rows": len(rows), "csv": args.csv})
    w = csv.writer(sys.stdout)
    w.writerow(header)
    w.writerows(rows)
    return 0


# ---------------------------------------------------------------------------
# parser wiring


def _add_common_mc(p):
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=_default_workers())
    p.add_argument("--n-steps", type=int, default=None,
                   help="grid steps (default max(1000, ceil(100*|theta|*T)))")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="oudrift",
        description="Ornstein-Uhlenbeck drift estimation: simulation, rate "
                    "functions, tail bounds, Monte Carlo checks.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="simulate one path, print its summary")
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--T", type=float, required=True)
    p.add_argument("--n-steps", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--path-index", type=int, default=0)

    p = sub.add_parser("mle", help="drift estimate from a path summary")
    p.add_argument("--x-T", type=float, required=True)
    p.add_argument("--s-T", type=float, required=True)
    p.add_argument("--T", type=float, required=True)

    p = sub.add_parser("cgf", help="finite-horizon (with --T) or limiting CGF")
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--T", type=float, default=None)
    p.add_argument("--kind", choices=["couple", "squared"], default="couple")

    p = sub.add_parser("rate", help="closed-form rate: --z (estimator) or --x/--y (couple)")
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--z", type=float, default=None)
    p.add_argument("--x", type=float, default=None)
    p.add_argument("--y", type=float, default=None)

    p = sub.add_parser("legendre", help="numeric Fenchel-Legendre transform of the couple CGF")
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--y", type=float, required=True)
    p.add_argument("--tol", type=float, default=1e-6)

    p = sub.add_parser("contract", help="estimator rate via the constrained energy profile")
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--z", type=float, required=True)

    p = sub.add_parser("ci-bound", help="tail bound for the drift estimate")
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--T", type=float, required=True)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--method", choices=["numeric", "corollary"], default="numeric")

    p = sub.add_parser("laplace-bound", help="upper bound for E[exp(b S_T)], b < 0")
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--T", type=float, required=True)
    p.add_argument("--b", type=float, required=True)

    p = sub.add_parser("mc-tail", help="Monte Carlo tail probability")
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--T", type=float, required=True)
    p.add_argument("--event", choices=list(montecarlo.EVENT_KINDS), required=True)
    p.add_argument("--threshold", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--estimator", choices=["plain", "tilted"], default="plain")
    p.add_argument("--theta-sim", type=float, default=None)
    _add_common_mc(p)

    p = sub.add_parser("ldp-slope", help="empirical decay slope across horizons")
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--event", choices=list(montecarlo.EVENT_KINDS), required=True)
    p.add_argument("--threshold", type=float, required=True)
    p.add_argument("--T-ladder", type=str, required=True, help="comma-separated horizons")
    p.add_argument("--n", type=int, required=True, help="paths per horizon")
    p.add_argument("--estimator", choices=["plain", "tilted"], default="plain")
    p.add_argument("--theta-sim", type=float, default=None)
    _add_common_mc(p)

    p = sub.add_parser("check", help="run a property suite")
    p.add_argument("--suite", default="all",
                   choices=sorted(checks.SUITES) + ["all"])

    p = sub.add_parser("sweep", help="Cartesian grid sweep of another subcommand")
    p.add_argument("target", help="subcommand to sweep")
    p.add_argument("--axis", action="append", required=True,
                   help="name=start:stop:count (repeatable)")
    p.add_argument("--csv", type=str, default=None, help="write rows to this file")

    return parser


HANDLERS = {
    "simulate": cmd_simulate,
    "mle": cmd_mle,
    "cgf": cmd_cgf,
    "rate": cmd_rate,
    "legendre": cmd_legendre,
    "contract": cmd_contract,
    "ci-bound": cmd_ci_bound,
    "laplace-bound": cmd_laplace_bound,
    "mc-tail": cmd_mc_tail,
    "ldp-slope": cmd_ldp_slope,
    "check": cmd_check,
}

SWEEPABLE = {k: v for k, v in HANDLERS.items() if k not in ("check",)}


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    if argv and argv[0] == "sweep":
        args, extra = parser.parse_known_args(argv)
        try:
            return cmd_sweep(args, extra)
        except (ValueError, OverflowError, RuntimeError) as exc:
            print(json.dumps({"error": str(exc), "type": type(exc).__name__,
                              "schema_version": SCHEMA_VERSION}))
            return 1
    args = parser.parse_args(argv)
    try:
        return _emit(HANDLERS[args.command](args))
    except CheckFailure as exc:
        _emit(exc.result)
        return 1
    except (ValueError, OverflowError, RuntimeError) as exc:
        print(json.dumps({"error": str(exc), "type": type(exc).__name__,
                          "schema_version": SCHEMA_VERSION}))
        return 1


if __name__ == "__main__":
    sys.exit(main())
