#!/usr/bin/env python3
"""Search Poisson-binomial laws for small values of E|S - ES| / sqrt(Var S / 2).

Exploratory only: prints the smallest ratios found and makes no claim that
any lower bound holds or fails in general.
"""

import argparse
import sys

from binotail.harness import explore_mad_ratio
from binotail.rational import format_enclosure, format_fraction


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-len", type=int, default=5)
    ap.add_argument("--den-cap", type=int, default=6)
    ap.add_argument("--perturbation-depth", type=int, default=6)
    ap.add_argument("--top", type=int, default=15)
    args = ap.parse_args()

    exploration = explore_mad_ratio(args.max_len, args.den_cap, args.perturbation_depth)
    rows = sorted(exploration.rows, key=lambda r: (r.ratio_squared, len(r.probs), r.probs))
    below = sum(1 for r in rows if r.ratio_squared < 1)
    print(f"vectors: {len(rows)}; ratio below 1: {below}")
    for r in rows[: args.top]:
        ratio = r.ratio(64)
        probs = ", ".join(format_fraction(p) for p in r.probs)
        print(f"({probs})  ratio^2={format_fraction(r.ratio_squared)}  ratio in {format_enclosure(ratio.lo, ratio.hi, 12)}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
