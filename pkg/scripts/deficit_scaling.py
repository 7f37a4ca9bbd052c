"""Smallest deficit a with bad fraction <= 1/d, for n = floor(d^((K - eps)/(K + 1))).

    python scripts/deficit_scaling.py [--K 2] [--eps 0.5] [--dims 16,64,256]
"""
import argparse

from crosspoly import sweeps

if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--K", type=int, default=2)
    ap.add_argument("--eps", type=float, default=0.5)
    ap.add_argument("--dims", default="16,64,256")
    args = ap.parse_args()
    dims = [int(x) for x in args.dims.split(",")]
    print("d,n,minimal_a")
    for d, n, a in sweeps.deficit_scaling(dims, args.K, args.eps):
        print(f"{d},{n},{a}")
