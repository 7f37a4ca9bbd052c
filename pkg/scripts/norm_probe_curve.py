"""Norm-probe ratios of the ball maximal function over nested radius sets E = {0..R}.

    python scripts/norm_probe_curve.py [--rmax 10] [--p 2] [--seed 0]

The ratios are empirical lower bounds for the l^p operator norm; a curve
that flattens as R grows is what a dimension-free bound predicts.
"""
import argparse

from crosspoly import sweeps

if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--rmax", type=int, default=10)
    ap.add_argument("--p", type=float, default=2.0)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    curves = sweeps.norm_curves((1, 2, 3, 4), args.rmax, args.p, args.seed)
    print("R," + ",".join(f"d{d}" for d in curves))
    for R in range(args.rmax + 1):
        print(f"{R}," + ",".join(f"{curves[d][R]:.6f}" for d in curves))
