"""Command-line entry point.

Subcommands:
    run          execute an experiment config and write the results CSV
    sweep-tau    grid over attacker CSI error levels (RSMA), one combined CSV
    validate     run the built-in invariant suite
    demo-config  write the reference configuration file
"""

import argparse
import sys
from dataclasses import replace

from .channel import CsiErrorSpec
from .config import ConfigError, load_config, render_config
from .harness import default_config, run_experiment, write_csv, write_dump_csv

__all__ = ["main"]


def _add_common(parser):
    parser.add_argument("--config", help="experiment config file (INI schema)")
    parser.add_argument("--output", default="results.csv", help="output CSV path")
    parser.add_argument("--seed", type=int, help="override the config seed")
    parser.add_argument("--trials", type=int, help="override the trial count")
    parser.add_argument("--threads", type=int, help="worker threads (default: all cores)")
    parser.add_argument(
        "--dump-trials", metavar="PATH", help="also write a per-trial CSV for debugging"
    )


def _load(args):
    config = load_config(args.config) if args.config else default_config()
    overrides = {}
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.trials is not None:
        overrides["trials"] = args.trials
    return replace(config, **overrides) if overrides else config


def _execute(config, args):
    dump_rows = [] if args.dump_trials else None
    records = run_experiment(config, threads=args.threads, dump_rows=dump_rows)
    if args.dump_trials:
        write_dump_csv(dump_rows, args.dump_trials)
    return records


def _cmd_run(args):
    records = _execute(_load(args), args)
    write_csv(records, args.output)
    print(f"wrote {len(records)} records to {args.output}")
    return 0


def _cmd_sweep_tau(args):
    base = _load(args)
    records = []
    for tau_bs in args.tau_bs:
        for tau in args.tau_attacker:
            config = replace(
                base,
                schemes=("rsma",),
                bs_csi=CsiErrorSpec(tau_bs_u=tau_bs),
                attacker_csi=CsiErrorSpec.uniform(tau),
            )
            records.extend(_execute(config, args))
    records.sort(key=lambda r: (r.tau_bs, r.tau_attacker, r.power_dbm, r.scheme, r.attack))
    write_csv(records, args.output)
    print(f"wrote {len(records)} records to {args.output}")
    return 0


def _cmd_validate(args):
    from .validate import run_checks

    failures = run_checks()
    return 1 if failures else 0


def _cmd_demo_config(args):
    text = render_config(default_config())
    with open(args.output, "w", encoding="utf-8") as fh:
        fh.write(text)
    print(f"wrote {args.output}")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="rsmaris",
        description="Monte-Carlo simulator for malicious-RIS attacks on RSMA/SDMA downlinks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run an experiment and write a CSV")
    _add_common(p_run)
    p_run.set_defaults(func=_cmd_run)

    p_sweep = sub.add_parser("sweep-tau", help="grid over attacker CSI error levels")
    _add_common(p_sweep)
    p_sweep.add_argument(
        "--tau-attacker",
        type=float,
        nargs="+",
        default=[0.3, 0.6, 0.9],
        help="attacker error levels to sweep",
    )
    p_sweep.add_argument(
        "--tau-bs",
        type=float,
        nargs="+",
        default=[0.0, 0.3],
        help="BS direct-link error levels to sweep",
    )
    p_sweep.set_defaults(func=_cmd_sweep_tau)

    p_val = sub.add_parser("validate", help="run the built-in invariant checks")
    p_val.set_defaults(func=_cmd_validate)

    p_demo = sub.add_parser("demo-config", help="write the reference config file")
    p_demo.add_argument("--output", default="demo.ini", help="where to write the config")
    p_demo.set_defaults(func=_cmd_demo_config)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
