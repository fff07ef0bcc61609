"""Command-line entry point: python -m covest_plots <command> <csv> <out>."""

import argparse
import sys

from .data import PlotsError
from .figures import plot_compare, plot_rates


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="python -m covest_plots",
        description="Render figures from experiment result CSVs.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    rates = commands.add_parser("rates", help="raw and rescaled error-vs-n panels")
    rates.add_argument("csv", help="input result CSV")
    rates.add_argument("out", help="output image (.svg default, .png supported)")
    rates.add_argument(
        "--norm", choices=("spec", "inf"), default="spec",
        help="which error norm to plot (default: spec)",
    )

    compare = commands.add_parser("compare", help="method-comparison panel")
    compare.add_argument("csv", help="input result CSV")
    compare.add_argument("out", help="output image (.svg default, .png supported)")

    args = parser.parse_args(argv)
    try:
        if args.command == "rates":
            written = plot_rates(args.csv, args.out, args.norm)
        else:
            written = plot_compare(args.csv, args.out)
    except PlotsError as exc:
        print(f"covest-plots: error: {exc}", file=sys.stderr)
        return 2
    print(written)
    return 0


if __name__ == "__main__":
    sys.exit(main())
