"""Re-run the oracle sweeps and print the observed values behind crosspoly.bands.

    python scripts/record_bands.py            # everything (about half a minute)
    python scripts/record_bands.py uniform    # one section
"""
import argparse
import math

from crosspoly import asymptotics as asym
from crosspoly import bands, sweeps
from crosspoly.exact_counts import delannoy


def uniform():
    for grid in (bands.UNIFORM_BAND_GRID, bands.UNIFORM_BAND_REFINED_GRID):
        lo, hi = sweeps.uniform_ratio_band(grid)
        print(f"uniform d<={grid}: [{lo:.5f}, {hi:.5f}] width {hi / lo:.3f}  recorded {bands.UNIFORM_BAND}")
    c = sweeps.central_ratios(10, 200)
    print(f"central 10<=n<=200: [{min(c):.5f}, {max(c):.5f}]  recorded {bands.CENTRAL_BAND}")


def regimes():
    fit = 0.0
    for d in range(2, 501):
        for n in range(1, d // 2 + 1):
            a = n / d
            diff = abs(asym.uniform_estimate(d, n).log_estimate - asym.binomial_form_estimate(d, n).log_estimate)
            if diff > 1:
                fit = max(fit, (diff - 1) / (n * a**3))
    print(f"binomial regime C fit {fit:.4f}  recorded {bands.BINOMIAL_REGIME_C}")
    fit, worst = 0.0, 0.0
    for d in range(1, 251):
        for n in range(2 * d, 501):
            a = n / d
            diff = abs(asym.uniform_estimate(n, d).log_estimate - asym.volume_form_estimate(d, n).log_estimate)
            worst = max(worst, diff)
            if diff > 1:
                fit = max(fit, (diff - 1) / (d / a**3))
    print(f"volume regime C fit {fit:.4f} (max |diff| {worst:.4f})  recorded {bands.VOLUME_REGIME_C}")
    r = [delannoy(400, n) / (2**n * math.comb(400, n)) for n in range(1, 21)]
    print(f"D(400,n)/(2^n C(400,n)), n<=20: [{min(r):.5f}, {max(r):.5f}]  recorded {bands.BINOMIAL_D400_BAND}")


def multipliers():
    for (d, s), sc in sorted(sweeps.multiplier_scans().items()):
        print(f"mult-scan d={d} n={8 * d} samples={s}: local {sc.local_constant:.4f} "
              f"global {sc.global_constant:.4f} ({sc.local_points} local points)")
    print(f"recorded local constant {bands.MULTIPLIER_LOCAL_CONSTANT}")


def concentration():
    few = sweeps.few_ones_sweep()
    print(f"few_ones max fraction*2^(n/2): {max(v for *_, v in few):.5f}  recorded {bands.FEW_ONES_CONSTANT}")
    large = sweeps.large_coordinate_sweep()
    print(f"large_coordinate max fraction*d: {max(v for *_, v in large):.3g}  "
          f"recorded {bands.LARGE_COORDINATE_CONSTANT}")
    mom = [v for *_, v in sweeps.second_moment_sweep()]
    print(f"second moment ratio: [{min(mom):.4f}, {max(mom):.4f}] width {max(mom) / min(mom):.2f}  "
          f"recorded {bands.SECOND_MOMENT_BAND}")


def probes():
    for d, curve in sweeps.norm_curves().items():
        print(f"norm curve d={d}: " + " ".join(f"{x:.4f}" for x in curve))
    print(f"recorded cap {bands.NORM_PROBE_CAP}")


SECTIONS = {"uniform": uniform, "regimes": regimes, "multipliers": multipliers,
            "concentration": concentration, "probes": probes}

if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("sections", nargs="*", help=", ".join(SECTIONS))
    args = ap.parse_args()
    unknown = set(args.sections) - set(SECTIONS)
    if unknown:
        ap.error(f"unknown sections: {sorted(unknown)}")
    for name in args.sections or SECTIONS:
        SECTIONS[name]()
