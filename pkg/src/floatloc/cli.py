"""Command-line interface.

Every subcommand writes a JSON report (to ``--output`` or stdout) and, where
there is a series to plot, a CSV file via ``--csv``.  Exit status is 0 on
success, 2 for invalid input and 1 for anything unexpected.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
import time
from pathlib import Path

import numpy as np

from floatloc import __version__
from floatloc.drift import DriftParams, response_trace, wakeup_period
from floatloc.heuristic import optimize
from floatloc.layout import CONTROLLABLE, STRICT, Instance
from floatloc.oracle import brute_force_optimum, exact_optimum, quantile_of, random_baseline
from floatloc.worstcase import adversarial_instance, verify_worst_case, worst_case_value

log = logging.getLogger("floatloc")

EXIT_OK, EXIT_INTERNAL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    """Bad user input; maps to exit status 2."""


def _jsonable(value):
    if isinstance(value, float) and math.isinf(value):
        return "infinite"
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def _load_instance(path) -> Instance:
    try:
        return Instance.from_json(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _mode(flag: str) -> str:
    return STRICT if flag == "strict" else CONTROLLABLE


def cmd_optimize(args) -> dict:
    instance = _load_instance(args.input)
    if instance.num_floating < 1:
        raise InputError("nothing to place")
    placement = optimize(instance)
    results = placement.to_dict()
    results["objective"] = placement.objective(_mode(args.mode))
    results["mode"] = _mode(args.mode)
    return {"input": instance.to_dict(), "results": results}


def cmd_oracle(args) -> dict:
    instance = _load_instance(args.input)
    if instance.num_floating < 1:
        raise InputError("nothing to place")
    exact = exact_optimum(instance)
    results = {"exact": exact.to_dict()}
    if args.brute:
        try:
            brute = brute_force_optimum(instance)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        results["brute_force"] = brute.to_dict()
        results["agree"] = math.isclose(
            exact.optimum_value, brute.optimum_value, rel_tol=1e-9
        )
    return {"input": instance.to_dict(), "results": results}


def cmd_montecarlo(args) -> dict:
    instance = _load_instance(args.input)
    if instance.num_floating < 1:
        raise InputError("nothing to place")
    if args.trials < 1:
        raise InputError("--trials must be at least 1")
    if args.seed < 0:
        raise InputError("--seed must be nonnegative")
    placement = optimize(instance)
    sample = random_baseline(instance, args.trials, args.seed, threads=args.threads)
    if args.csv:
        sample.cdf_to_csv(args.csv)
    if args.samples_csv:
        sample.to_csv(args.samples_csv)
    heuristic = placement.objective_controllable
    return {
        "input": instance.to_dict(),
        "results": {
            "heuristic_objective": heuristic,
            "quantile": quantile_of(heuristic, sample),
            "trials": args.trials,
            "seed": args.seed,
            "baseline_max": float(sample.objectives.max()),
            "baseline_median": float(np.median(sample.objectives)),
        },
    }


def cmd_worstcase(args) -> dict:
    try:
        formula = worst_case_value(args.length, args.num_floating, args.num_bumps)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    results = {"formula_value": formula}
    if args.num_bumps >= 1:
        adv = adversarial_instance(args.length, args.num_floating, args.num_bumps)
        results["adversarial_instance"] = adv.to_dict()
        results["adversarial_optimum"] = exact_optimum(adv).optimum_value
    if args.grid is not None:
        try:
            report = verify_worst_case(args.length, args.num_floating, args.num_bumps, args.grid)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        results["verification"] = report.to_dict()
    echo = {
        "length": args.length,
        "num_floating": args.num_floating,
        "num_bumps": args.num_bumps,
        "grid": args.grid,
    }
    return {"input": echo, "results": results}


def cmd_wakeup(args) -> dict:
    try:
        params = DriftParams.from_json(args.input)
    except OSError as exc:
        raise InputError(f"cannot read {args.input}: {exc.strerror}") from None
    except (ValueError, TypeError) as exc:
        raise InputError(str(exc)) from None
    results = {}
    if args.clearance_from_worstcase is not None:
        length, nfl, nta = args.clearance_from_worstcase
        if not (float(nfl).is_integer() and float(nta).is_integer()):
            raise InputError("--clearance-from-worstcase expects LS NFLS NTAS with integer counts")
        try:
            clearance = worst_case_value(length, int(nfl), int(nta))
        except ValueError as exc:
            raise InputError(str(exc)) from None
        results["clearance_source"] = "worstcase"
    elif args.clearance is not None:
        clearance = args.clearance
        results["clearance_source"] = "given"
    else:
        raise InputError("one of --clearance or --clearance-from-worstcase is required")
    if not clearance > 0:
        raise InputError(f"clearance must be positive, got {clearance}")
    period = wakeup_period(params, clearance)
    results.update(
        clearance=clearance,
        wakeup_period=period,
        wakeup_frequency=0.0 if math.isinf(period) else 1.0 / period,
    )
    if args.csv:
        t_end = args.trace_end or (period if math.isfinite(period) else 10.0)
        dt = args.dt or t_end / 1000
        try:
            response_trace(params, t_end, dt).to_csv(args.csv)
        except ValueError as exc:
            raise InputError(str(exc)) from None
    return {"input": params.to_dict(), "results": results}


COMMANDS = {
    "optimize": cmd_optimize,
    "oracle": cmd_oracle,
    "montecarlo": cmd_montecarlo,
    "worstcase": cmd_worstcase,
    "wakeup": cmd_wakeup,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="floatloc", description="Max-min floating-location placement between disk bumps."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_input=True):
        if needs_input:
            p.add_argument("--input", "-i", required=True, help="JSON input file")
        p.add_argument("--output", "-o", help="write the JSON report here instead of stdout")

    p = sub.add_parser("optimize", help="run the bracket-allocation heuristic")
    common(p)
    p.add_argument("--mode", choices=["controllable", "strict"], default="controllable")

    p = sub.add_parser("oracle", help="exact optimum, optionally checked by brute force")
    common(p)
    p.add_argument("--brute", action="store_true", help="also enumerate every allocation")

    p = sub.add_parser("montecarlo", help="compare the heuristic against random placements")
    common(p)
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--csv", help="empirical CDF (value,cumulative_prob)")
    p.add_argument("--samples-csv", help="raw per-trial objectives (trial,objective)")

    p = sub.add_parser("worstcase", help="worst-case spacing over all bump layouts")
    common(p, needs_input=False)
    p.add_argument("--length", type=float, required=True, help="interval length in tracks")
    p.add_argument("--num-floating", type=int, required=True)
    p.add_argument("--num-bumps", type=int, required=True)
    p.add_argument("--grid", type=int, help="verify by grid search with this many points per axis")
    p.add_argument("--threads", type=int, default=1, help="accepted for symmetry; grid search is serial")

    p = sub.add_parser("wakeup", help="longest safe floating period for given drift parameters")
    common(p)
    p.add_argument("--clearance", type=float)
    p.add_argument(
        "--clearance-from-worstcase",
        nargs=3,
        type=float,
        metavar=("LS", "NFLS", "NTAS"),
        help="use the worst-case spacing as clearance",
    )
    p.add_argument("--csv", help="drift trace (t,x,xdot)")
    p.add_argument("--trace-end", type=float, help="trace length in seconds")
    p.add_argument("--dt", type=float, help="trace sampling step in seconds")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    start = time.perf_counter()
    try:
        body = COMMANDS[args.command](args)
    except InputError as exc:
        print(f"floatloc {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # noqa: BLE001
        log.debug("internal error", exc_info=True)
        print(f"floatloc {args.command}: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL

    report = {
        "subcommand": args.command,
        "version": __version__,
        "input": body["input"],
        "results": body["results"],
        "wall_time_ms": round((time.perf_counter() - start) * 1000.0, 3),
    }
    text = json.dumps(_jsonable(report), indent=2) + "\n"
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
