"""Exact counts of the "bad" sets in the concentration estimates, plus a CLT check.

Each DP treats the d coordinates as identical and independent: a coordinate
with |x_i| = c costs c units of l1 budget and comes with multiplicity 2 for
c > 0. The per-coordinate polynomial is raised to the d-th power with the
budget truncated at n (see ``_budget``), so every count is an exact integer.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import guards
from ._budget import pow_2d, zeros_2d
from .exact_counts import bounded_ball_count, delannoy, sphere_count, support_shell_count


@dataclass(frozen=True)
class ConcentrationReport:
    d: int
    n: int
    bad_count: int
    total: int
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if not 0 <= self.bad_count <= self.total:
            raise AssertionError(f"bad count {self.bad_count} outside [0, {self.total}]")

    @property
    def fraction(self) -> float:
        return float(Fraction(self.bad_count, self.total))


def _dp_guard(d: int, n: int, cap: int) -> None:
    cells = (n + 1) * (cap + 1)
    guards.check("dp_budget", 2 * max(d, 1).bit_length() * cells * cells)


def deficit_count(d: int, n: int, K: int, a: int, surface: bool = False) -> ConcentrationReport:
    """Points of B_n (or S_n) whose small part sum_i |x_i| 1{|x_i| <= K} is at most n - a."""
    if not 0 <= a <= n:
        raise ValueError(f"need 0 <= a <= n, got a={a}, n={n}")
    if K < 0:
        raise ValueError("K must be nonnegative")
    total = sphere_count(d, n) if surface else delannoy(d, n)
    threshold = n - a
    # second axis: small-part sum, saturating once it exceeds the threshold
    cap = threshold + 1
    _dp_guard(d, n, cap)
    poly = zeros_2d(n, cap)
    poly[0, 0] = 1
    for c in range(1, n + 1):
        poly[c, min(c, cap) if c <= K else 0] += 2
    table = pow_2d(poly, d, n, cap)
    rows = table[n : n + 1] if surface else table
    bad = int(rows[:, : threshold + 1].sum())
    return ConcentrationReport(d, n, bad, total, {"K": K, "a": a, "surface": surface})


def minimal_deficit(d: int, n: int, K: int, target: float | None = None, surface: bool = False) -> int:
    """Smallest a with deficit fraction <= target (default 1/d); n + 1 if none."""
    target = 1.0 / d if target is None else target
    for a in range(n + 1):
        if deficit_count(d, n, K, a, surface).fraction <= target:
            return a
    return n + 1


def few_ones_count(d: int, n: int) -> ConcentrationReport:
    """Points of S_n with at most n/2 coordinates equal to ±1."""
    if d < 1 or n < 0:
        raise ValueError(f"need d >= 1 and n >= 0, got d={d}, n={n}")
    limit = n // 2
    cap = limit + 1
    _dp_guard(d, n, cap)
    poly = zeros_2d(n, cap)
    poly[0, 0] = 1
    if n >= 1:
        poly[1, min(1, cap)] += 2
    for c in range(2, n + 1):
        poly[c, 0] += 2
    table = pow_2d(poly, d, n, cap)
    bad = int(table[n, : limit + 1].sum())
    return ConcentrationReport(d, n, bad, sphere_count(d, n), {"limit": limit})


def large_coordinate_count(d: int, n: int, K: float) -> ConcentrationReport:
    """Points of B_n with |x_i| >= 6K for some i (K need not be an integer)."""
    if 6 * K < 1 - 1e-12:
        raise ValueError("need 6K >= 1")
    # integer threshold ceil(6K); the slack absorbs float K such as 1/3
    threshold = math.ceil(6 * K - 1e-9)
    total = delannoy(d, n)
    bad = total - bounded_ball_count(d, n, min(threshold - 1, n))
    return ConcentrationReport(d, n, bad, total, {"K": K, "threshold": threshold})


def shell_ratio(d: int, n: int, C: float, l: int) -> Fraction:
    """|B_n^{l+1}| / |B_n^l| where B_n^l has exactly floor(C sqrt d) + l zero coordinates."""
    if l < 1:
        raise ValueError("l must be positive")
    lstar = math.floor(C * math.sqrt(d)) + l
    if lstar + 1 > d:
        raise ValueError(f"l*+1 = {lstar + 1} exceeds d = {d}")
    if n <= d - lstar - 1:
        raise ValueError(f"need n > d - l* - 1 = {d - lstar - 1}, got n = {n}")
    closed = Fraction((d - lstar) ** 2, 2 * (lstar + 1) * (n - d + lstar + 1))
    quotient = Fraction(
        support_shell_count(d, d - lstar - 1, n), support_shell_count(d, d - lstar, n)
    )
    if closed != quotient:
        raise AssertionError(f"closed form {closed} != shell quotient {quotient}")
    return closed


@dataclass(frozen=True)
class SecondMomentReport:
    d: int
    n: int
    moment: Fraction

    @property
    def ratio_to_alpha_sq(self) -> float:
        if self.n == 0:
            return math.nan
        return float(self.moment / Fraction(self.n, self.d) ** 2)


def second_moment(d: int, n: int) -> SecondMomentReport:
    """Exact mean of x_1^2 over B_n^d, from the slices |x_1| = j."""
    if d < 1 or n < 0:
        raise ValueError(f"need d >= 1 and n >= 0, got d={d}, n={n}")
    # |A_j| = 2 D(d-1, n-j) for j >= 1
    weighted = sum(j * j * 2 * delannoy(d - 1, n - j) for j in range(1, n + 1))
    return SecondMomentReport(d, n, Fraction(weighted, delannoy(d, n)))


@dataclass(frozen=True)
class TailEstimate:
    estimate: float
    stderr: float
    gaussian: float
    threshold: int
    samples: int
    seed: int


TAIL_SHARDS = 16


def clt_tail_probability(
    d_star: int, C: float, samples: int = 10**6, seed: int = 0, chunk: int = 50_000
) -> TailEstimate:
    """Monte Carlo P(U_1 + V_1 + ... + U_d* + V_d* <= -floor(sqrt(2 C^2 d*)) - 1).

    The 2 d* summands are iid uniform on [-1/2, 1/2]. Samples are split into
    a fixed number of shards with spawned PCG64 streams, so the estimate does
    not depend on how the shards are scheduled.
    """
    if samples < 10**4:
        raise ValueError("need at least 10^4 samples")
    if d_star < 1:
        raise ValueError("d_star must be positive")
    threshold = -math.floor(math.sqrt(2 * C * C * d_star)) - 1
    children = np.random.SeedSequence(seed).spawn(TAIL_SHARDS)
    base, extra = divmod(samples, TAIL_SHARDS)
    hits = 0
    for i, child in enumerate(children):
        hits += _tail_shard(child, base + (i < extra), 2 * d_star, threshold, chunk)
    p = hits / samples
    sigma = math.sqrt(2 * d_star / 12.0)
    gaussian = 0.5 * math.erfc(-threshold / sigma / math.sqrt(2.0))
    return TailEstimate(p, math.sqrt(p * (1 - p) / samples), gaussian, threshold, samples, seed)


def _tail_shard(seq, count, terms, threshold, chunk) -> int:
    rng = np.random.Generator(np.random.PCG64(seq))
    hits = 0
    while count > 0:
        m = min(chunk, count)
        sums = (rng.random((m, terms)) - 0.5).sum(axis=1)
        hits += int(np.count_nonzero(sums <= threshold))
        count -= m
    return hits
