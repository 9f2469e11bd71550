#!/usr/bin/env python3
"""Regenerate every preset figure dataset (CSV + gnuplot blocks).

Equivalent to running `unruhsim repro --figure N --out-dir DIR` for each
preset; kept as a script so a single command rebuilds the whole set.
"""

import argparse
import sys

from unruhsim import cli, sweep


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", default="figures")
    parser.add_argument(
        "--figure", choices=list(sweep.FIGURES), action="append",
        help="repeatable; default is every preset",
    )
    args = parser.parse_args()
    figures = args.figure or list(sweep.FIGURES)
    for fig in figures:
        code = cli.main(["repro", "--figure", fig, "--out-dir", args.out_dir])
        if code != 0:
            return code
    return 0


if __name__ == "__main__":
    sys.exit(main())
