"""Sweep open-grid cluster states and print one certificate line per size.

Small grids are included on purpose: 1xN paths and the 3x3 grid fail the
minimality hypothesis, and their witnesses are worth reading next to the
certified sizes.
"""

from __future__ import annotations

import argparse
import time

from stablulc.surface import grid_minimality_certificate


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-side", type=int, default=7,
                        help="largest grid side to sweep (default 7)")
    args = parser.parse_args()
    for rows in range(1, args.max_side + 1):
        for cols in range(rows, args.max_side + 1):
            start = time.perf_counter()
            cert = grid_minimality_certificate(rows, cols)
            elapsed = time.perf_counter() - start
            print(f"{rows}x{cols}: {cert.line()} [{elapsed:.3f}s]")


if __name__ == "__main__":
    main()
