"""``render`` command-line entry point."""

import argparse
import sys

from .figures import FIGURE_IDS, FigureSpec, NoDataError, SchemaError, render

__all__ = ["main"]


def build_parser():
    parser = argparse.ArgumentParser(
        prog="render",
        description="Render sum-rate sweep CSVs as line plots",
    )
    parser.add_argument("--csv", required=True, help="results CSV path")
    parser.add_argument("--figure", required=True, choices=FIGURE_IDS)
    parser.add_argument("--out", required=True, help="output image path")
    parser.add_argument("--scheme", action="append", default=[], help="keep only this scheme")
    parser.add_argument("--attack", action="append", default=[], help="keep only this attack")
    parser.add_argument("--tau-bs", type=float, help="keep only this BS error level")
    parser.add_argument(
        "--tau-attacker", type=float, help="keep only this attacker error level"
    )
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    spec = FigureSpec(
        input_csv=args.csv,
        figure_id=args.figure,
        output_path=args.out,
        schemes=tuple(args.scheme),
        attacks=tuple(args.attack),
        tau_bs=args.tau_bs,
        tau_attacker=args.tau_attacker,
    )
    try:
        series = render(spec)
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return 2
    except NoDataError as exc:
        print(f"no data: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 4
    print(f"wrote {args.out} ({len(series)} curves)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
