"""Command-line front end: run / compare / sweep / plot.

Exit codes: 0 success, 2 validation error (bad config or arguments),
3 numerical failure (an integrator gave up).
"""

import argparse
import sys

from .errors import SpintError, ValidationError
from .harness import (
    compare,
    emit_plot_scripts,
    parse_config,
    read_csv,
    run_scenario,
    write_csv,
)

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3


def _add_override_flags(parser):
    parser.add_argument("--problem")
    parser.add_argument("--integrator")
    parser.add_argument("--dt")
    parser.add_argument("--eps-res", dest="eps_res")
    parser.add_argument("--t-final", dest="t_final")
    parser.add_argument("--order")
    parser.add_argument("--pade-num", dest="pade_num")
    parser.add_argument("--pade-den", dest="pade_den")
    parser.add_argument("--quad-nodes", dest="quad_nodes")
    parser.add_argument("--stride")
    parser.add_argument("--out")


def _overrides(args):
    keys = ("problem", "integrator", "dt", "eps_res", "t_final", "order",
            "pade_num", "pade_den", "quad_nodes", "stride", "out")
    return {k: getattr(args, k) for k in keys if getattr(args, k, None) is not None}


def _summarize(record):
    s = record.summary
    print(f"{record.problem} / {record.integrator}: "
          f"mean_step={s['mean_step']:.5g} mean_err={s['mean_err']:.5g} "
          f"max_err={s['max_err']:.5g} cpu={s['total_cpu_ns'] * 1e-9:.3f}s")


def _cmd_run(args):
    scenario = parse_config(args.config, overrides=_overrides(args))
    record = run_scenario(scenario)
    if scenario.out:
        write_csv(record, scenario.out)
        print(f"wrote {scenario.out}")
    _summarize(record)
    if record.failed:
        print(f"FAILED: {record.failure_message}", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


def _cmd_compare(args):
    records = []
    for path in args.configs:
        scenario = parse_config(path)
        record = run_scenario(scenario)
        if record.failed:
            print(f"FAILED ({path}): {record.failure_message}", file=sys.stderr)
            return EXIT_NUMERICAL
        if scenario.out:
            write_csv(record, scenario.out)
        records.append(record)
    table, _ = compare(records)
    print(table)
    return EXIT_OK


def _cmd_sweep(args):
    base_overrides = _overrides(args)
    values = [v for v in args.values.split(",") if v]
    if not values:
        raise ValidationError("sweep needs a nonempty --values list")
    print(f"{args.param:>12}{'mean_step':>14}{'mean_err':>14}{'max_err':>14}")
    status = EXIT_OK
    for value in values:
        overrides = dict(base_overrides)
        overrides[args.param] = value
        scenario = parse_config(args.config, overrides=overrides)
        record = run_scenario(scenario)
        if record.failed:
            print(f"{value:>12}  FAILED: {record.failure_message}")
            status = EXIT_NUMERICAL
            continue
        if scenario.out:
            write_csv(record, f"{scenario.out}.{args.param}_{value}")
        s = record.summary
        print(f"{value:>12}{s['mean_step']:>14.5g}{s['mean_err']:>14.5g}"
              f"{s['max_err']:>14.5g}")
    return status


def _cmd_plot(args):
    record = read_csv(args.record)
    base = args.record[:-4] if args.record.endswith(".csv") else args.record
    files = emit_plot_scripts(record, base)
    for path in files:
        print(f"wrote {path}")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="spint",
                                     description="structure-preserving integrator harness")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one scenario from a config file")
    p_run.add_argument("config")
    _add_override_flags(p_run)
    p_run.set_defaults(func=_cmd_run)

    p_cmp = sub.add_parser("compare", help="run several configs and tabulate")
    p_cmp.add_argument("configs", nargs="+")
    p_cmp.set_defaults(func=_cmd_compare)

    p_sweep = sub.add_parser("sweep", help="re-run a config over parameter values")
    p_sweep.add_argument("config")
    p_sweep.add_argument("--param", required=True)
    p_sweep.add_argument("--values", required=True,
                         help="comma-separated list of values")
    _add_override_flags(p_sweep)
    p_sweep.set_defaults(func=_cmd_sweep)

    p_plot = sub.add_parser("plot", help="emit a plot script for a record CSV")
    p_plot.add_argument("record")
    p_plot.set_defaults(func=_cmd_plot)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except SpintError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
