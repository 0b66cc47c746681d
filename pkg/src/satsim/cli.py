"""Command-line entry point ``satsim``.

Exit codes: 0 success, 2 config/validation error, 3 numerical or
degenerate-state error, 4 I/O error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .config import builtin_config, load_config
from .equilibrium import comparative_statics, equilibrium_entry, welfare_optimum
from .errors import ConfigError, SatsimError
from .export import export_results, fmt
from .scenarios import display, dilution_rows, run_fixed_point, run_scenario
from .sweep import SweepSpec, run_sweep

log = logging.getLogger("satsim")


def _floats(text: str):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise ConfigError(f"expected a comma-separated list of numbers, got {text!r}") from None


def _config(args):
    if getattr(args, "scenario", None):
        cfg = builtin_config(args.scenario)
    elif getattr(args, "config", None):
        cfg = load_config(Path(args.config))
    else:
        raise ConfigError("give --scenario NAME or --config PATH")
    if getattr(args, "seed", None) is not None:
        cfg = cfg.with_value("seed", args.seed)
    return cfg


def _print_report(report) -> None:
    for w in report.warnings:
        log.warning(w)
    if report.dilution:
        print(f"{'B':>8}  {'avg_attention':>13}  {'profit':>8}")
        for r in report.dilution:
            print(f"{fmt(r.B):>8}  {display(r.avg_attention):>13}  {display(r.profit):>8}")
    if report.final_metrics is not None:
        for name, value in report.final_metrics.as_rows():
            print(f"{name}: {fmt(value)}")
    if report.steps_run:
        print(f"steps_run: {report.steps_run}")
        print(f"converged_at: {fmt(report.converged_at)}")
    for c in report.target_checks:
        print(f"target {c.name}: observed {c.observed:.4g}, published {c.target}, window {c.window} "
              f"-> {'PASS' if c.passed else 'FAIL'}")
    print(f"runtime_ms: {report.runtime_ms}")


def cmd_run(args) -> int:
    report = run_scenario(_config(args))
    _print_report(report)
    if args.out:
        export_results(report, args.format, args.out)
    return 0


def cmd_fixed_point(args) -> int:
    report = run_fixed_point(_config(args))
    _print_report(report)
    if args.out:
        export_results(report, args.format, args.out)
    return 0


def cmd_sweep(args) -> int:
    spec = SweepSpec(_config(args), args.axis, _floats(args.values), args.replicates,
                     scale_steps_with_delta=args.scale_steps)
    reports = run_sweep(spec)
    print("axis_value,replicate,gini,top_1pct,median_mean,error")
    for r in reports:
        print(",".join([fmt(r.axis_value), fmt(r.replicate), fmt(r.metric("gini")),
                        fmt(r.metric("top_share_0.01")), fmt(r.metric("median_mean")), r.error or ""]))
    if args.out:
        export_results(reports, args.format, args.out)
    return 3 if all(r.error for r in reports) else 0


def cmd_equilibrium(args) -> int:
    eq = equilibrium_entry(args.p, args.A, args.k, args.z)
    for name in ("B_star", "B_star_floor", "interior", "attention_per_builder", "profit_at_eq",
                 "outside_absorption"):
        print(f"{name}: {fmt(getattr(eq, name))}")
    if eq.interior:
        for name, v in comparative_statics(args.p, args.A, args.k, args.z)._asdict().items():
            print(f"{name}: {fmt(v)}")
    w = welfare_optimum(args.A, args.z, args.p, args.k)
    print(f"B_social: {fmt(w.B_social)}")
    print(f"excess_entry: {fmt(w.excess_entry)}")
    return 0


def cmd_dilution(args) -> int:
    rows = dilution_rows(args.A, args.z, args.p, args.k, _floats(args.B_list))
    print(f"{'B':>8}  {'avg_attention':>13}  {'profit':>8}")
    for r in rows:
        print(f"{fmt(r.B):>8}  {display(r.avg_attention):>13}  {display(r.profit):>8}")
    eq = equilibrium_entry(args.p, args.A, args.k, args.z)
    print(f"B_star: {fmt(eq.B_star)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="satsim", description="Attention-market entry and concentration simulator")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_source(p, scenario=True):
        g = p.add_mutually_exclusive_group(required=True)
        if scenario:
            g.add_argument("--scenario", help="built-in scenario: illustrative, dilution, calibration")
        g.add_argument("--config", help="path to a YAML/JSON scenario file")
        p.add_argument("--seed", type=int)
        p.add_argument("--out", help="directory for result files")
        p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("run", help="run one scenario")
    add_source(p)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("sweep", help="sweep one parameter")
    add_source(p)
    p.add_argument("--axis", required=True, help="parameter path, e.g. dynamics.alpha")
    p.add_argument("--values", required=True, help="comma-separated values")
    p.add_argument("--replicates", type=int, default=1)
    p.add_argument("--scale-steps", action="store_true",
                   help="scale dynamics.steps by base_delta/delta at each point")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("equilibrium", help="free-entry equilibrium and welfare")
    for name in ("p", "A", "k", "z"):
        p.add_argument(f"--{name}", type=float, required=True)
    p.set_defaults(func=cmd_equilibrium)

    p = sub.add_parser("dilution", help="average attention and profit per builder")
    for name in ("A", "z", "p", "k"):
        p.add_argument(f"--{name}", type=float, required=True)
    p.add_argument("--B-list", dest="B_list", required=True)
    p.set_defaults(func=cmd_dilution)

    p = sub.add_parser("fixed-point", help="interior rest point of the dynamics (alpha <= 0.95)")
    add_source(p)
    p.set_defaults(func=cmd_fixed_point)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except SatsimError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
