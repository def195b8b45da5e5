#!/usr/bin/env python3
"""Build the index-function table f_prim / f_simp (with f_fill bounds) and
report the extremal witness words per length.

Usage:
    python scripts/build_index_table.py --rank 2 --nmax 6 --jobs 4 \
        --out table_r2.json
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from primindex.index import f_table


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--rank", type=int, default=2)
    ap.add_argument("--nmax", type=int, default=6)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--max-partitions", type=int, default=None)
    ap.add_argument("--out", default=None)
    args = ap.parse_args()

    t0 = time.perf_counter()
    table = f_table(
        args.nmax, args.rank, max_partitions=args.max_partitions, jobs=args.jobs
    )
    dt = time.perf_counter() - t0
    for row in table.rows:
        fill = (
            str(row.f_fill_lower)
            if row.f_fill_lower == row.f_fill_upper
            else f"[{row.f_fill_lower},{row.f_fill_upper}]"
        )
        print(
            f"n={row.n:>2}  f_prim={row.f_prim}  f_simp={row.f_simp}  "
            f"f_fill={fill:<7} witness {row.witness_prim}"
        )
    print(f"({dt:.1f}s)", file=sys.stderr)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(json.dumps(table.to_json(), indent=2, sort_keys=True))
        print(f"wrote {args.out}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
