"""Command-line interface.

Exit codes: 0 success, 2 usage or parse error, 3 internal invariant
tripwire.  Every command writes a JSON reproducibility manifest (flags,
seed, version) to stderr unless its main output already is that manifest.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

import numpy as np

from . import __version__
from .evolution import BitStringParseError, format_trace, pack, parse_bitstring, stabilize, stabilize_packed
from .exactlaw import (
    CapExceededError,
    law_by_enumeration,
    law_by_mixture,
    special_law_by_dp,
    special_law_by_enumeration,
)
from .limits import Chi3Half, Gaussian, NuLambda, ShiftedNuLambda
from .montecarlo import (
    Critical,
    Fixed,
    Threshold,
    ks_statistic,
    limit_distribution,
    manifest,
    recentered,
    regime_probability,
    run_experiment,
    sample_string,
)
from .walk import stabilization_time_closed_form
from .young import stabilization_time_via_depth

EXIT_USAGE = 2
EXIT_TRIPWIRE = 3


class UsageError(Exception):
    pass


class Tripwire(Exception):
    pass


def _emit_manifest(args, **extra):
    flags = {k: v for k, v in vars(args).items() if k != "func"}
    print(json.dumps({"version": __version__, "flags": flags, **extra}, sort_keys=True), file=sys.stderr)


def _write(text: str, path: str | None):
    if path:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _string_arg(args):
    if args.string is not None:
        try:
            return parse_bitstring(args.string)
        except BitStringParseError as exc:
            raise UsageError(f"cannot parse bit string: {exc}") from exc
    if args.random is None:
        raise UsageError("give a bit string or --random N")
    return sample_string(args.random, args.p, args.seed)


def cmd_evolve(args):
    s = _string_arg(args)
    final, steps, trace = stabilize(s, record_trace=args.trace)
    if trace is not None:
        sys.stdout.write(format_trace(trace))
    print(f"steps={steps}")
    _emit_manifest(args)


def cmd_time(args):
    s = _string_arg(args)
    methods = ["sim", "depth", "formula"] if args.method == "all" else [args.method]
    compute = {
        "sim": lambda: stabilize_packed(pack(s))[1],
        "depth": lambda: stabilization_time_via_depth(s),
        "formula": lambda: stabilization_time_closed_form(s),
    }
    results = {m: compute[m]() for m in methods}
    print(" ".join(f"{m}={v}" for m, v in results.items()))
    _emit_manifest(args, n=len(s))
    if len(set(results.values())) > 1:
        raise Tripwire(f"methods disagree: {results}")


def cmd_exact(args):
    if args.n < 1:
        raise UsageError("--n must be at least 1")
    if args.p_den <= 0 or not 0 < args.p_num < args.p_den:
        raise UsageError("need 0 < p-num < p-den")
    p = Fraction(args.p_num, args.p_den)
    law = args.law or ("special" if args.method == "dp" else "general")
    try:
        if law == "general":
            if args.method == "enum":
                pmf = law_by_enumeration(args.n, p)
            elif args.method == "mixture":
                pmf = law_by_mixture(args.n, p)
            else:
                raise UsageError("the general law is computed by enum or mixture")
        else:
            if args.n < 2:
                raise UsageError("the special law needs --n >= 2")
            if args.method == "enum":
                pmf = special_law_by_enumeration(args.n, p)
            elif args.method == "dp":
                pmf = special_law_by_dp(args.n, p)
            else:
                raise UsageError("the special law is computed by enum or dp")
    except CapExceededError as exc:
        raise UsageError(str(exc)) from exc
    _write(pmf.to_csv(), args.out)
    _emit_manifest(args, law=law)


def _regime(args):
    if args.regime == "critical":
        return Critical()
    if args.regime == "fixed":
        if args.p is None:
            raise UsageError("--regime fixed needs --p")
        return Fixed(args.p)
    if args.lam is None:
        raise UsageError("--regime threshold needs --lambda")
    return Threshold(args.lam)


def _experiment(args):
    try:
        regime = _regime(args)
        t0 = time.perf_counter()
        sample = run_experiment(regime, args.n, args.samples, args.seed, args.workers)
        wall = (time.perf_counter() - t0) * 1000.0
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return regime, sample, wall


def cmd_sample(args):
    _, sample, wall = _experiment(args)
    _write(sample.to_csv(), args.out)
    print(json.dumps(manifest(sample, wall_time_ms=wall), sort_keys=True), file=sys.stderr)


def cmd_ks(args):
    regime, sample, wall = _experiment(args)
    dist = limit_distribution(regime)
    if args.recenter:
        if not isinstance(regime, Threshold):
            raise UsageError("--recenter applies to the threshold regime")
        sample = recentered(sample, regime_probability(regime, args.n) * args.n)
        dist = ShiftedNuLambda(regime.lam)
    stat = ks_statistic(sample, dist)
    out = manifest(sample, ks={"distribution": repr(dist), "statistic": stat}, wall_time_ms=wall)
    out["workers"] = args.workers
    print(json.dumps(out, sort_keys=True))


def _distribution(args):
    name = args.dist
    if name == "chi3half":
        return Chi3Half()
    if name == "gaussian":
        return Gaussian(args.mean, args.variance)
    if args.lam is None:
        raise UsageError(f"--dist {name} needs --lambda")
    try:
        return NuLambda(args.lam) if name == "nu" else ShiftedNuLambda(args.lam)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_density(args):
    if args.points < 1:
        raise UsageError("--points must be positive")
    dist = _distribution(args)
    xs = np.linspace(args.start, args.stop, args.points)
    dens = np.atleast_1d(dist.pdf(xs))
    cum = np.atleast_1d(dist.cdf(xs))
    lines = ["x,pdf,cdf"]
    lines.extend(f"{x!r},{f!r},{c!r}" for x, f, c in zip(xs.tolist(), dens.tolist(), cum.tolist()))
    _write("\n".join(lines) + "\n", args.out)
    _emit_manifest(args)


def cmd_bench(args):
    s = sample_string(args.n, args.p, args.seed)
    timings = {}
    results = {}
    for name, fn in [
        ("formula", lambda: stabilization_time_closed_form(s)),
        ("depth", lambda: stabilization_time_via_depth(s)),
        ("sim", lambda: stabilize_packed(pack(s))[1]),
    ]:
        t0 = time.perf_counter()
        results[name] = fn()
        timings[name] = (time.perf_counter() - t0) * 1000.0
    report = {
        "version": __version__,
        "n": args.n,
        "p": args.p,
        "seed": args.seed,
        "steps": results,
        "wall_time_ms": timings,
        "sim_over_formula": timings["sim"] / max(timings["formula"], 1e-9),
    }
    print(json.dumps(report, sort_keys=True))
    if len(set(results.values())) > 1:
        raise Tripwire(f"methods disagree: {results}")


def _add_regime_flags(p):
    p.add_argument("--regime", choices=["critical", "fixed", "threshold"], required=True)
    p.add_argument("--p", type=float, help="bit probability for --regime fixed")
    p.add_argument("--lambda", dest="lam", type=float, help="threshold parameter")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stabtime", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    for name, func, helptext in [
        ("evolve", cmd_evolve, "run the evolution and print the step count"),
        ("time", cmd_time, "stabilization time by simulation, depth and formula"),
    ]:
        p = sub.add_parser(name, help=helptext)
        p.add_argument("string", nargs="?")
        p.add_argument("--random", type=int, metavar="N", help="use a seeded random string of length N")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--p", type=float, default=0.5)
        p.set_defaults(func=func)
    sub.choices["evolve"].add_argument("--trace", action="store_true")
    sub.choices["time"].add_argument("--method", choices=["sim", "depth", "formula", "all"], default="all")

    p = sub.add_parser("exact", help="exact law of T as CSV")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p-num", type=int, required=True)
    p.add_argument("--p-den", type=int, required=True)
    p.add_argument("--method", choices=["enum", "mixture", "dp"], default="mixture")
    p.add_argument("--law", choices=["general", "special"])
    p.add_argument("--out")
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("sample", help="seeded Monte Carlo sample as CSV")
    _add_regime_flags(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("ks", help="KS distance of a seeded sample to its limit law")
    _add_regime_flags(p)
    p.add_argument("--recenter", action="store_true", help="threshold only: center at p_n n")
    p.set_defaults(func=cmd_ks)

    p = sub.add_parser("density", help="limit density and CDF on a grid as CSV")
    p.add_argument("--dist", choices=["chi3half", "gaussian", "nu", "shifted-nu"], required=True)
    p.add_argument("--lambda", dest="lam", type=float)
    p.add_argument("--mean", type=float, default=0.0)
    p.add_argument("--variance", type=float, default=0.25)
    p.add_argument("--from", dest="start", type=float, required=True)
    p.add_argument("--to", dest="stop", type=float, required=True)
    p.add_argument("--points", type=int, default=100)
    p.add_argument("--out")
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("bench", help="time simulation against the closed form")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--p", type=float, default=0.5)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args)
    except UsageError as exc:
        print(f"stabtime {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (Tripwire, AssertionError) as exc:
        print(f"stabtime {args.command}: invariant violated: {exc}", file=sys.stderr)
        return EXIT_TRIPWIRE
    return 0


if __name__ == "__main__":
    sys.exit(main())
