"""``motorfit`` command line: estimate, compare and curves.

Exit status: 0 on success, 1 on input errors, 2 when no feasible parameter
set was found.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import io
from .estimator import (
    EstimationError,
    compare_methods,
    default_config,
    emit_curves,
    estimate,
    quantity_table,
)
from .objective import DEFAULT_PENALTY_WEIGHT, SearchBounds

EXIT_OK, EXIT_INPUT, EXIT_INFEASIBLE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _run_options(p):
    p.add_argument("--nameplate", required=True, help="nameplate key-value file")
    p.add_argument("--seed", type=int, default=42, help="base seed; restart r uses seed + r")
    p.add_argument("--restarts", type=_positive_int, default=10)
    p.add_argument("--iters", type=int, default=100)
    p.add_argument("--colony", type=_positive_int, default=120, help="population size")
    p.add_argument("--limit", type=_positive_int, default=10, help="ABC abandonment limit")
    p.add_argument("--phi-max", type=float, default=0.5, help="ABC step amplitude")
    p.add_argument("--bounds", help="CSV of name,lo,hi search bounds")
    p.add_argument("--penalty-weight", type=float, default=DEFAULT_PENALTY_WEIGHT)
    p.add_argument("--workers", type=_positive_int, default=1)
    p.add_argument("--out", default="out", help="output directory")


def build_parser():
    parser = _Parser(prog="motorfit", description="Double-cage induction motor parameter estimation.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("estimate", help="estimate circuit parameters with one method")
    _run_options(p)
    p.add_argument("--method", choices=("abc", "pso", "ga"), default="abc")
    p.add_argument("--points", type=int, default=1000, help="curve samples")

    p = sub.add_parser("compare", help="run several methods side by side")
    _run_options(p)
    p.add_argument("--methods", default="abc,pso,ga")
    p.add_argument("--reference", help="params CSV shown as an extra column")
    p.add_argument("--reference-name", default="reference")
    p.add_argument("--points", type=int, default=1000)

    p = sub.add_parser("curves", help="curves for a fixed parameter file")
    p.add_argument("--params", required=True)
    p.add_argument("--nameplate", required=True)
    p.add_argument("--points", type=int, default=1000)
    p.add_argument("--out", default="out")
    return parser


def _config(args, method):
    return default_config(
        method,
        rng_seed=args.seed,
        max_iterations=args.iters,
        colony_size=args.colony,
        swarm_size=args.colony,
        population_size=args.colony,
        limit=args.limit,
        phi_max=args.phi_max,
    )


def _write_curves(out: Path, curves, suffix=lambda name: ""):
    for name, pts in curves.torque.items():
        io.write_csv(out / f"torque_curve{suffix(name)}.csv", ["slip", "torque"], pts)
    for name, pts in curves.current.items():
        io.write_csv(out / f"current_curve{suffix(name)}.csv", ["slip", "current"], pts)
    anchors = [(q, s, v) for q, s, v in curves.torque_anchors + curves.current_anchors]
    io.write_csv(out / "anchors.csv", ["quantity", "slip", "value"], anchors)


def _format_report(rows) -> str:
    lines = [f"{'quantity':<8} {'manufacturer':>14} {'calculated':>14} {'error %':>9}"]
    for r in rows:
        lines.append(f"{r.quantity:<8} {r.manufacturer:>14.6g} {r.calculated:>14.6g} {r.error_pct:>9.3f}")
    return "\n".join(lines)


def _write_report(path, rows):
    io.write_csv(path, ["quantity", "manufacturer", "calculated", "error_pct"],
                 [(r.quantity, r.manufacturer, r.calculated, r.error_pct) for r in rows])


def cmd_estimate(args) -> int:
    nameplate = io.read_nameplate(args.nameplate)
    bounds = io.read_bounds(args.bounds) if args.bounds else SearchBounds.default()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    try:
        report = estimate(nameplate, args.method, bounds, _config(args, args.method),
                          args.restarts, args.penalty_weight, args.workers)
    except EstimationError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    io.write_params(out / "params.csv", report.params)
    _write_report(out / "report.csv", report.quantities)
    io.write_csv(out / "trace.csv", ["iteration", "best_cost"],
                 [(i + 1, c) for i, c in enumerate(report.trace.best_cost_per_iteration)])
    _write_curves(out, emit_curves({args.method: report}, nameplate, args.points))
    print(f"method {args.method}, winning seed {report.winning_seed}, cost {report.final_cost:.6g}")
    print(_format_report(report.quantities))
    return EXIT_OK


def cmd_compare(args) -> int:
    nameplate = io.read_nameplate(args.nameplate)
    bounds = io.read_bounds(args.bounds) if args.bounds else SearchBounds.default()
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    bad = [m for m in methods if m not in ("abc", "pso", "ga")]
    if not methods or bad:
        raise io.InputError(f"invalid --methods entry: {', '.join(bad) or '(empty)'}")
    reference = io.read_params(args.reference) if args.reference else None
    configs = {m: _config(args, m) for m in methods}
    comp = compare_methods(nameplate, methods, reference, bounds, configs, args.restarts,
                           args.penalty_weight, args.workers, args.reference_name)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    cols = comp.columns()

    io.write_csv(out / "params_table.csv", ["parameter"] + cols,
                 [[name] + values for name, values in comp.params_table()])
    header = ["quantity", "manufacturer"]
    for c in cols:
        header += [f"{c}_calculated", f"{c}_error_pct"]
    rows = []
    for q, mf, cells in comp.quantities_table():
        row = [q, mf]
        for cell in cells:
            row += list(cell) if cell is not None else [None, None]
        rows.append(row)
    io.write_csv(out / "quantities_table.csv", header, rows)

    traces = comp.traces()
    n_iter = max((len(t) for t in traces.values()), default=0)
    io.write_csv(out / "traces.csv", ["iteration"] + methods,
                 [[i + 1] + [traces[m][i] if m in traces and i < len(traces[m]) else None
                             for m in methods] for i in range(n_iter)])
    summary = []
    for m in methods:
        if m in comp.reports:
            rep = comp.reports[m]
            summary.append((m, "ok", rep.final_cost, rep.max_error_pct))
        else:
            summary.append((m, "infeasible", None, None))
    io.write_csv(out / "summary.csv", ["method", "status", "final_cost", "max_error_pct"], summary)

    if comp.models:
        curves = emit_curves(comp.models, nameplate, args.points)
        _write_curves(out, curves, suffix=lambda name: f"_{name}")

    for m, status, c, e in summary:
        detail = f"cost {c:.6g}, max error {e:.3f} %" if status == "ok" else comp.failures[m]
        print(f"{m:<6} {status:<10} {detail}")
    for note in comp.ordering_notes():
        print(note)
    return EXIT_OK if comp.reports else EXIT_INFEASIBLE


def cmd_curves(args) -> int:
    if args.points < 2:
        raise io.InputError("--points must be >= 2")
    nameplate = io.read_nameplate(args.nameplate)
    params = io.read_params(args.params)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    _write_curves(out, emit_curves({"model": params}, nameplate, args.points))
    rows = quantity_table(params, nameplate)
    _write_report(out / "report.csv", rows)
    print(_format_report(rows))
    return EXIT_OK


COMMANDS = {"estimate": cmd_estimate, "compare": cmd_compare, "curves": cmd_curves}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
