"""Parameter sweeps behind the recorded constants in :mod:`crosspoly.bands`.

Shared by ``scripts/record_bands.py`` (which prints the observed values)
and the acceptance tests (which compare them against the recorded bands).
"""
from __future__ import annotations

import math

from .asymptotics import uniform_estimate
from .concentration import few_ones_count, large_coordinate_count, minimal_deficit, second_moment
from .exact_counts import delannoy, delannoy_table
from .lattice_ops import multiplier_bound_scan, operator_norm_curve


def iroot(x: int, k: int) -> int:
    """floor(x^(1/k)) for integers x >= 0."""
    r = int(round(x ** (1.0 / k)))
    while r**k > x:
        r -= 1
    while (r + 1) ** k <= x:
        r += 1
    return r


def uniform_ratio_band(dmax: int) -> tuple[float, float]:
    """min and max of D(d, n) / uniform_estimate(d, n) over 1 <= n <= d <= dmax."""
    table = delannoy_table(dmax, dmax)
    lo, hi = math.inf, -math.inf
    for d in range(1, dmax + 1):
        row = table[d]
        for n in range(1, d + 1):
            lr = math.log(row[n]) - uniform_estimate(d, n).log_estimate
            lo, hi = min(lo, lr), max(hi, lr)
    return math.exp(lo), math.exp(hi)


def central_ratios(nmin: int = 10, nmax: int = 200) -> list[float]:
    """D(n, n) sqrt(n) / (1 + sqrt 2)^(2n), computed in logs."""
    log_base = 2 * math.log1p(math.sqrt(2))
    return [math.exp(math.log(delannoy(n, n)) + 0.5 * math.log(n) - n * log_base)
            for n in range(nmin, nmax + 1)]


def few_ones_sweep(nmax: int = 24, ratio: int = 818) -> list[tuple[int, int, float]]:
    """(d, n, fraction * 2^(n/2)) with d = ratio * n, i.e. alpha = 1/ratio."""
    out = []
    for n in range(1, nmax + 1):
        d = ratio * n
        out.append((d, n, few_ones_count(d, n).fraction * 2.0 ** (n / 2)))
    return out


def large_coordinate_sweep(dims=(100, 400, 1600, 6400), Ks=(1, 2), points: int = 5):
    """(K, d, n, fraction * d) on 10K <= n <= floor(d^(K/(K+1))), ``points`` values of n per (K, d)."""
    out = []
    for K in Ks:
        for d in dims:
            top = iroot(d**K, K + 1)
            step = max(1, (top - 10 * K) // (points - 1))
            for n in range(10 * K, top + 1, step):
                out.append((K, d, n, large_coordinate_count(d, n, K).fraction * d))
    return out


def second_moment_sweep(dims=range(1, 31), multiples=(20, 40, 80)):
    """(d, n, E[x_1^2] / alpha^2) for n = c d."""
    return [(d, c * d, second_moment(d, c * d).ratio_to_alpha_sq) for d in dims for c in multiples]


def multiplier_scans(dims=(4, 16, 64), samples=(300, 600), seed: int = 0):
    """{(d, samples): MultiplierScan} at n = 8d."""
    return {(d, s): multiplier_bound_scan(d, 8 * d, s, seed) for d in dims for s in samples}


def norm_curves(dims=(1, 2, 3, 4), rmax: int = 10, p: float = 2.0, seed: int = 0):
    """{d: prefix ratios for E = {0..R}, R = 0..rmax}."""
    return {d: operator_norm_curve(d, range(rmax + 1), p, seed=seed) for d in dims}


def deficit_scaling(dims=(16, 64, 256), K: int = 2, eps: float = 0.5):
    """(d, n, minimal a) with n = floor(d^((K - eps)/(K + 1))) and target fraction 1/d."""
    out = []
    for d in dims:
        n = math.floor(d ** ((K - eps) / (K + 1)))
        out.append((d, n, minimal_deficit(d, n, K)))
    return out
