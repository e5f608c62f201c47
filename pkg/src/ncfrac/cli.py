"""Command-line surface: `ncfrac expand|constants|verify`.

Non-interactive by design: every subcommand emits a machine-readable report
(JSON with a config echo, CSV rows, or a plain-text table) and the exit
status tells scripts what happened: 0 success / all checks passed,
1 a verification check failed its tolerance, 2 usage or input error.

Fractions are accepted only as exact "p/q" strings, never as decimals, so
the exact-arithmetic guarantee holds end to end.  Runs are reproducible:
the same flags (including --seed) produce byte-identical JSON/CSV.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from fractions import Fraction

from . import __version__, constants, ergodic, ulam
from .convergents import convergent_sequence
from .dynamics import DEFAULT_MAX_TERMS, expand

#: Per-suite pass tolerances (relative unless noted); fixed, not flags.
TOLERANCES = {
    "birkhoff": 0.02,
    "lyapunov": 0.02,
    "levy": 0.02,
    "frequencies": 0.02,
    "bounds": 1e-3,          # absolute, at depth 200
    "bounds-identity": 1e-12,  # absolute
    "levy-floor": 0.01,      # absolute slack on the denominator lower bound
    "ulam": 0.01,            # absolute L1 error
}

SUITES = ("birkhoff", "levy", "lyapunov", "frequencies", "bounds", "ulam")


def _parse_fraction(text: str) -> Fraction:
    parts = text.split("/")
    if len(parts) != 2:
        raise ValueError(f"expected an exact fraction like 2/3, got {text!r}")
    try:
        p, q = int(parts[0]), int(parts[1])
    except ValueError:
        raise ValueError(f"expected an exact fraction like 2/3, got {text!r}") from None
    if q <= 0:
        raise ValueError(f"denominator must be positive, got {text!r}")
    return Fraction(p, q)


def _parse_n_values(text: str) -> list[int]:
    """Accept "3", "1..5" and "1,2,5"."""
    out: list[int] = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if ".." in chunk:
            lo, hi = chunk.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(chunk))
    if not out or any(n < 1 for n in out):
        raise ValueError(f"indices must be integers >= 1, got {text!r}")
    return out


def _parse_r_values(text: str) -> list[float]:
    return [float(chunk) for chunk in text.split(",")]


def _fraction_log10(value: Fraction) -> float:
    if value == 0:
        return -math.inf
    return (math.log(value.numerator) - math.log(value.denominator)) / math.log(10)


# --------------------------------------------------------------------------
# subcommands: each returns (results, config_echo, exit_code)


def _cmd_expand(args) -> tuple[list[dict], dict, int]:
    x = _parse_fraction(args.x)
    expansion = expand(x, args.n, args.max_terms)
    result: dict = {
        "x": args.x,
        "N": args.n,
        "coeffs": list(expansion.coeffs),
        "terminated": expansion.terminated,
        "convergents": [],
    }
    if expansion.coeffs:
        trace = convergent_sequence(expansion.coeffs, args.n)
        for conv in trace.convergents[1:]:
            ratio = conv.ratio()
            err = abs(x - ratio)
            result["convergents"].append(
                {
                    "n": conv.n,
                    "A": conv.A,
                    "B": conv.B,
                    "ratio": f"{ratio.numerator}/{ratio.denominator}",
                    "abs_error": float(err),
                    "log10_abs_error": _fraction_log10(err),
                }
            )
    config = {"x": args.x, "n": args.n, "max_terms": args.max_terms}
    return [result], config, 0


def _cmd_constants(args) -> tuple[list[dict], dict, int]:
    ns = _parse_n_values(args.n)
    rs = _parse_r_values(args.r)
    results = [constants.ConstantsReport.compute(n, rs=rs, tol=args.tol).to_record() for n in ns]
    config = {"n": args.n, "r": args.r, "tol": args.tol}
    return results, config, 0


def _check(suite: str, n: int, report: ergodic.EstimateReport, tolerance: float,
           absolute: bool = False) -> dict:
    deviation = report.abs_deviation if absolute else report.rel_deviation
    row = {"suite": suite, "N": n, "tolerance": tolerance}
    row.update(report.to_record())
    row["deviation"] = deviation
    row["pass"] = bool(math.isfinite(deviation) and deviation <= tolerance)
    return row


def _suite_birkhoff(ns, args) -> list[dict]:
    rows = []
    for n in ns:
        cfg = _sample_config(n, args)
        rows.append(_check("birkhoff", n,
                           ergodic.birkhoff_estimate(cfg, "log-digit", threads=args.threads),
                           TOLERANCES["birkhoff"]))
        rows.append(_check("birkhoff", n,
                           ergodic.birkhoff_estimate(cfg, "digit-indicator", threads=args.threads),
                           TOLERANCES["birkhoff"]))
    return rows


def _suite_lyapunov(ns, args) -> list[dict]:
    return [
        _check("lyapunov", n, ergodic.lyapunov_estimate(_sample_config(n, args), threads=args.threads),
               TOLERANCES["lyapunov"])
        for n in ns
    ]


def _suite_levy(ns, args) -> list[dict]:
    rows = []
    for n in ns:
        report = ergodic.levy_estimate(_sample_config(n, args), threads=args.threads)
        rows.append(_check("levy", n, report, TOLERANCES["levy"]))
        floor_row = {
            "suite": "levy",
            "N": n,
            "quantity": "denominator-growth[floor]",
            "value": report.extras["min_rate"],
            "target": report.extras["denominator_bound"],
            "tolerance": TOLERANCES["levy-floor"],
            "deviation": max(0.0, report.extras["denominator_bound"] - report.extras["min_rate"]),
            "pass": report.extras["min_rate"] >= report.extras["denominator_bound"] - TOLERANCES["levy-floor"],
        }
        rows.append(floor_row)
    return rows


def _suite_frequencies(ns, args) -> list[dict]:
    rows = []
    for n in ns:
        cfg = _sample_config(n, args)
        for digit_value in range(n, n + 3):
            report = ergodic.birkhoff_estimate(cfg, "digit-indicator", M=digit_value,
                                               threads=args.threads)
            rows.append(_check("frequencies", n, report, TOLERANCES["frequencies"]))
    return rows


def _suite_bounds(ns, args) -> list[dict]:
    rows = []
    for n in ns:
        lyap_bound, denom_bound = constants.lower_bounds(n)
        identity_gap = abs(2.0 * denom_bound - math.log(n) - lyap_bound)
        rows.append(
            {
                "suite": "bounds",
                "N": n,
                "quantity": "bound-identity",
                "value": identity_gap,
                "target": 0.0,
                "tolerance": TOLERANCES["bounds-identity"],
                "deviation": identity_gap,
                "pass": identity_gap <= TOLERANCES["bounds-identity"],
            }
        )
        for report in ergodic.bound_achievement(n, depth=200):
            rows.append(_check("bounds", n, report, TOLERANCES["bounds"], absolute=True))
    return rows


def _suite_ulam(ns, args) -> list[dict]:
    rows = []
    for n in ns:
        model = ulam.build_model(n, args.cells)
        rows.append(
            {
                "suite": "ulam",
                "N": n,
                "quantity": f"density-l1[m={args.cells}]",
                "value": model.l1_error,
                "target": 0.0,
                "tolerance": TOLERANCES["ulam"],
                "deviation": model.l1_error,
                "iterations": model.iterations,
                "pass": model.l1_error < TOLERANCES["ulam"],
            }
        )
    return rows


_SUITE_RUNNERS = {
    "birkhoff": _suite_birkhoff,
    "levy": _suite_levy,
    "lyapunov": _suite_lyapunov,
    "frequencies": _suite_frequencies,
    "bounds": _suite_bounds,
    "ulam": _suite_ulam,
}


def _sample_config(n: int, args) -> ergodic.SampleConfig:
    return ergodic.SampleConfig(
        N=n,
        trials=args.trials,
        denominator_bits=args.bits,
        max_terms=args.max_terms,
        seed=args.seed,
    )


def _cmd_verify(args) -> tuple[list[dict], dict, int]:
    ns = _parse_n_values(args.n)
    rows = _SUITE_RUNNERS[args.suite](ns, args)
    config = {
        "suite": args.suite,
        "n": args.n,
        "trials": args.trials,
        "bits": args.bits,
        "max_terms": args.max_terms,
        "seed": args.seed,
        "cells": args.cells,
        "threads": args.threads,
    }
    failed = [row for row in rows if not row["pass"]]
    return rows, config, 1 if failed else 0


# --------------------------------------------------------------------------
# output rendering


def _render_json(command: str, config: dict, results: list[dict]) -> str:
    return json.dumps(
        {"command": command, "config": config, "results": results},
        sort_keys=True,
        indent=2,
    ) + "\n"


def _format_cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _render_csv(command: str, results: list[dict]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer)
    if command == "expand":
        writer.writerow(["n", "A", "B", "ratio", "abs_error", "log10_abs_error"])
        for result in results:
            for conv in result["convergents"]:
                writer.writerow([_format_cell(conv[key]) for key in
                                 ("n", "A", "B", "ratio", "abs_error", "log10_abs_error")])
    elif command == "constants":
        writer.writerow(["N", "quantity", "value"])
        for record in results:
            for key, value in record.items():
                if key == "N":
                    continue
                writer.writerow([record["N"], key, _format_cell(value)])
    else:  # verify
        header = ["suite", "N", "quantity", "value", "target", "deviation", "tolerance", "pass"]
        writer.writerow(header)
        for row in results:
            writer.writerow([_format_cell(row.get(key, "")) for key in header])
    return buffer.getvalue()


def _render_plain(command: str, results: list[dict]) -> str:
    lines = []
    if command == "expand":
        for result in results:
            lines.append(f"x = {result['x']}   N = {result['N']}")
            coeffs = " ".join(str(a) for a in result["coeffs"]) or "(empty)"
            lines.append(f"digits: {coeffs}")
            lines.append(f"terminated: {result['terminated']}")
            if result["convergents"]:
                lines.append(f"{'n':>4}  {'A':>24}  {'B':>24}  {'ratio':>28}  {'|x - A/B|':>12}")
                for conv in result["convergents"]:
                    lines.append(
                        f"{conv['n']:>4}  {conv['A']:>24}  {conv['B']:>24}  "
                        f"{conv['ratio']:>28}  {conv['abs_error']:>12.5e}"
                    )
    elif command == "constants":
        for record in results:
            lines.append(f"N = {record['N']}")
            for key, value in record.items():
                if key != "N":
                    lines.append(f"  {key:<28} {_format_cell(value)}")
    else:
        for row in results:
            status = "PASS" if row["pass"] else "FAIL"
            lines.append(
                f"{status}  N={row['N']:<4} {row['quantity']:<34} "
                f"value={_format_cell(row.get('value'))} target={_format_cell(row.get('target'))} "
                f"deviation={_format_cell(row.get('deviation'))} tol={row['tolerance']}"
            )
        failed = sum(1 for row in results if not row["pass"])
        lines.append(f"{len(results) - failed}/{len(results)} checks passed")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ncfrac",
        description="N-continued fractions: exact expansions, closed-form constants, "
                    "and numerical verification suites.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_io_flags(p):
        p.add_argument("--format", choices=("json", "csv", "plain"), default="plain")
        p.add_argument("--output", default=None, help="write to this path instead of stdout")

    p_expand = sub.add_parser("expand", help="expand an exact fraction and show its convergents")
    p_expand.add_argument("x", help='exact fraction in [0,1) as "p/q"')
    p_expand.add_argument("--n", type=int, default=1, help="map index N >= 1 (default 1)")
    p_expand.add_argument("--max-terms", type=int, default=DEFAULT_MAX_TERMS)
    add_io_flags(p_expand)
    p_expand.set_defaults(func=_cmd_expand)

    p_const = sub.add_parser("constants", help="closed-form constants for a range of N")
    p_const.add_argument("--n", default="1", help='indices: "3", "1..5" or "1,2,5" (default 1)')
    p_const.add_argument("--r", default="-1,0.5", help="comma list of power-mean orders")
    p_const.add_argument("--tol", type=float, default=1e-12, help="series tail tolerance")
    add_io_flags(p_const)
    p_const.set_defaults(func=_cmd_constants)

    p_verify = sub.add_parser("verify", help="run a verification suite; exit 1 on failure")
    p_verify.add_argument("suite", choices=SUITES)
    p_verify.add_argument("--n", default="1", help='indices: "3", "1..5" or "1,2,5" (default 1)')
    p_verify.add_argument("--trials", type=int, default=200)
    p_verify.add_argument("--bits", type=int, default=512)
    p_verify.add_argument("--max-terms", type=int, default=DEFAULT_MAX_TERMS)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--cells", type=int, default=512, help="grid size for the ulam suite")
    p_verify.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                          help="worker processes for trial loops (1 = serial; results identical)")
    add_io_flags(p_verify)
    p_verify.set_defaults(func=_cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        results, config, code = args.func(args)
    except (ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    config = dict(config, format=args.format)
    if args.format == "json":
        text = _render_json(args.command, config, results)
    elif args.format == "csv":
        text = _render_csv(args.command, results)
    else:
        text = _render_plain(args.command, results)

    if args.output:
        with open(args.output, "w") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
