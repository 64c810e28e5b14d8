#!/usr/bin/env python3
"""Generate the Hofstadter-butterfly dataset (CSV + JSON sidecar + SVG).

Example:
    python scripts/make_butterfly.py --qmax 50 --hill-bands 5 \
        --output out/butterfly.csv --svg
"""

import argparse
import sys

from hexspec.cli import main as cli_main


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--potential", default="zero")
    ap.add_argument("--qmax", type=int, default=50)
    ap.add_argument("--hill-bands", type=int, default=5)
    ap.add_argument("--output", default="butterfly.csv")
    ap.add_argument("--svg", default=None, metavar="PATH",
                    help="also write an SVG plot to PATH")
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()

    argv = [
        "--threads", str(args.threads),
        "butterfly",
        "--potential", args.potential,
        "--qmax", str(args.qmax),
        "--hill-bands", str(args.hill_bands),
        "--output", args.output,
    ]
    if args.svg:
        argv.extend(["--svg", args.svg])
    return cli_main(argv)


if __name__ == "__main__":
    sys.exit(main())
