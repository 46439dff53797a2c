#!/usr/bin/env python3
"""Run every catalog claim on its default grid and write one CSV per claim.

Exit status follows the CLI contract over all claims combined.
"""

import argparse
import sys
import time
from pathlib import Path

from binotail.harness import GridSpec, catalog_ids, exit_status, run_claim_sweep, summarize, write_csv
from binotail.harness.claims import CATALOG

# grids used by the acceptance criteria, keyed by claim family
DEFAULT_GRIDS = {
    "binomial": GridSpec(n_min=2, n_max=200, p_den_cap=24),
    "pair": GridSpec(n_min=1, n_max=40, p_den_cap=8),
    "tce-monotone": GridSpec(n_min=1, n_max=20, p_den_cap=8),
    "poisson": GridSpec(n_min=2, n_max=2, p_den_cap=2),
    "stirling": GridSpec(n_min=2, n_max=2, p_den_cap=2, stirling_max=200),
}
SMALLER = {
    "PROOF_CHAIN": GridSpec(n_min=2, n_max=60, p_den_cap=12),
    # the Fraction convolution is quadratic in n with large denominators
    "PB_HOMOGENEOUS": GridSpec(n_min=1, n_max=30, p_den_cap=24),
}


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out-dir", default="sweeps")
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--digits", type=int, default=12, help="significant digits for compact rendering")
    ap.add_argument("--exact", action="store_true", help="write exact rationals (large files)")
    args = ap.parse_args()

    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    every = []
    for cid in catalog_ids():
        grid = SMALLER.get(cid, DEFAULT_GRIDS[CATALOG[cid].family])
        start = time.perf_counter()
        result = run_claim_sweep(grid, cid, jobs=args.jobs)
        with open(out / f"{cid}.csv", "w", encoding="utf-8", newline="") as fh:
            write_csv(result.records, fh, None if args.exact else args.digits)
        every.extend(result.records)
        print(f"{cid:<20} {result.summary.lines()[0][len('summary: '):]}  ({time.perf_counter() - start:.1f}s)")
    total = summarize(every)
    for line in total.lines():
        print(line)
    return exit_status(total)


if __name__ == "__main__":
    sys.exit(main())
