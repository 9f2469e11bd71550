#!/usr/bin/env python3
"""Run every closed-form-vs-pipeline verification and write the reports.

One text report per (formula, coupling, global mode) combination; the
committed copies under tests/fixtures/ act as regression anchors, so a
change in any verdict or deviation shows up as a diff.
"""

import argparse
import os
import sys

from unruhsim import analytic, channels

COMBOS = [
    (channels.PHASE_FLIP, channels.MULTILOCAL, None),
    (channels.PHASE_FLIP, channels.GLOBAL, channels.PRODUCT),
    (channels.PHASE_FLIP, channels.GLOBAL, channels.CORRELATED),
    (channels.DEPHASING, channels.MULTILOCAL, None),
    (channels.DEPHASING, channels.GLOBAL, channels.PRODUCT),
    (channels.DEPHASING, channels.GLOBAL, channels.CORRELATED),
]

ML_GRID = 21
GLOBAL_GRID = 11


def report_name(kind, coupling, mode):
    stem = f"verify_{kind}_{coupling}"
    if mode:
        stem += f"_{mode}"
    return stem + ".txt"


def generate(out_dir):
    os.makedirs(out_dir, exist_ok=True)
    for kind, coupling, mode in COMBOS:
        grid = ML_GRID if coupling == channels.MULTILOCAL else GLOBAL_GRID
        report = analytic.verify_against_numeric(
            kind,
            coupling,
            global_mode=mode or channels.PRODUCT,
            grid_points=grid,
        )
        path = os.path.join(out_dir, report_name(kind, coupling, mode))
        with open(path, "w", newline="\n") as fh:
            fh.write(analytic.format_report(report))
        print(f"{path}: {report.verdict} "
              f"(max dev {report.max_abs_deviation:.3e})")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--out-dir",
        default=os.path.join(os.path.dirname(__file__), "..", "tests",
                             "fixtures"),
        help="where to write the report files",
    )
    args = parser.parse_args()
    generate(os.path.abspath(args.out_dir))
    return 0


if __name__ == "__main__":
    sys.exit(main())
