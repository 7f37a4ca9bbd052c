"""Exact count against each estimator on its natural domain, written as CSV.

    python scripts/uniform_sweep.py [--dmax 300] [--step 5] [--jobs 4] [-o DIR]

Writes uniform.csv (1 <= n <= d), binomial.csv (n <= d/2), volume.csv
(n >= 2d) and pw.csv to DIR (default $CROSSPOLY_OUTPUT_DIR or ./out).
"""
import argparse
import os
from pathlib import Path

from crosspoly import cli


def grids(dmax, step):
    ds = range(step, dmax + 1, step)
    return {
        "uniform": [(d, n) for d in ds for n in range(1, d + 1, step)],
        "binomial": [(d, n) for d in ds for n in range(0, d // 2 + 1, step)],
        "volume": [(d, n) for d in range(1, 41) for n in range(2 * d, 20 * d + 1, d)],
        "pw": [(d, n) for d in ds for n in range(max(d // 2, 1), d + 1, step)],
    }


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--dmax", type=int, default=300)
    ap.add_argument("--step", type=int, default=5)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("-o", "--outdir", default=os.environ.get(cli.OUTPUT_DIR_ENV, "out"))
    args = ap.parse_args()
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    for which, pairs in grids(args.dmax, args.step).items():
        tasks = [{"d": d, "n": n, "which": which} for d, n in pairs]
        rows = cli.run_sweep("estimate", tasks, jobs=args.jobs)
        (out / f"{which}.csv").write_bytes(cli.emit(rows, "csv"))
        print(f"{which}: {len(rows)} rows -> {out / (which + '.csv')}")
