"""Tabulate the qubit counts reachable by chained encodings.

One line per reachable length up to --max with its fewest-encodings plan
(distance-preserving plans win ties), followed by a summary of the odd
lengths that need a distance-2 step and the largest such gap.
"""

from __future__ import annotations

import argparse

from stablulc.factory import enumerate_lengths, reachable_without_rep


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max", type=int, default=199,
                        help="largest length to tabulate (default 199)")
    args = parser.parse_args()
    for plan in enumerate_lengths(args.max):
        print(f"n={plan.n:4d}  {plan.describe():>14}  {plan.distance_class}")
    gaps = [n for n in range(1, args.max + 1, 2)
            if not reachable_without_rep(n)]
    print(f"odd lengths <= {args.max} not reachable with t=0: {len(gaps)}"
          + (f", largest {gaps[-1]}" if gaps else ""))


if __name__ == "__main__":
    main()
