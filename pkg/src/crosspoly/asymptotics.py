"""Closed-form estimates for D(d, n) and the saddle-point quantities behind them.

Every estimator returns an :class:`EstimateReport` whose ``log_estimate`` is
authoritative; ``estimate`` is its exponential and overflows to ``inf`` once
the count passes ~1e308.

Notation: alpha = n/d and r = (sqrt(1 + alpha^2) - 1)/alpha, the saddle point
of h(z)^d z^-n with h(z) = (1 + z)/(1 - z).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .exact_counts import exact_volume

__all__ = [
    "SaddleParams",
    "EstimateReport",
    "saddle_radius",
    "saddle_params",
    "uniform_estimate",
    "uniform_estimate_explicit",
    "b_coefficients",
    "b_series",
    "binomial_form_estimate",
    "volume_form_estimate",
    "pemantle_wilson_estimate",
    "exact_volume",
]

MAX_B_ORDER = 12


def saddle_radius(alpha: float) -> float:
    """r(alpha) in the cancellation-free form alpha / (1 + sqrt(1 + alpha^2))."""
    return alpha / (1.0 + math.sqrt(1.0 + alpha * alpha))


def _log_h(r: float) -> float:
    return math.log1p(r) - math.log1p(-r)


@dataclass(frozen=True)
class SaddleParams:
    d: int
    n: int
    alpha: float
    r: float
    h_r: float
    beta: float

    @property
    def log_saddle_value(self) -> float:
        """log(h(r)^d r^-n) = d f(r)."""
        return self.d * _log_h(self.r) - self.n * math.log(self.r)


def saddle_params(d: int, n: int) -> SaddleParams:
    if d < 1 or n < 1:
        raise ValueError("saddle parameters need d >= 1 and n >= 1")
    alpha = n / d
    r = saddle_radius(alpha)
    h_r = (1.0 + r) / (1.0 - r)
    beta = alpha * alpha / r + alpha / (r * r)
    return SaddleParams(d, n, alpha, r, h_r, beta)


@dataclass(frozen=True)
class EstimateReport:
    d: int
    n: int
    log_estimate: float
    which: str

    @property
    def estimate(self) -> float:
        try:
            return math.exp(self.log_estimate)
        except OverflowError:
            return math.inf


def _require_positive(d, n):
    if d < 1 or n < 1:
        raise ValueError(f"need d >= 1 and n >= 1, got d={d}, n={n}")


def uniform_estimate(d: int, n: int) -> EstimateReport:
    """h(r)^d r^-n / sqrt(n), valid up to universal constants for 1 <= n <= d."""
    _require_positive(d, n)
    if n > d:
        raise ValueError(
            f"uniform_estimate needs n <= d (got d={d}, n={n}); "
            "use D(d, n) = D(n, d) and call uniform_estimate(n, d)"
        )
    sp = saddle_params(d, n)
    return EstimateReport(d, n, sp.log_saddle_value - 0.5 * math.log(n), "uniform")


def uniform_estimate_explicit(d: int, n: int) -> float:
    """Log of the same estimator written directly in d and n."""
    _require_positive(d, n)
    s = math.hypot(d, n)
    # s - n and s - d without cancellation
    s_minus_n = d * d / (s + n)
    s_minus_d = n * n / (s + d)
    return d * math.log(d / s_minus_n) + n * math.log(n / s_minus_d) - 0.5 * math.log(n)


def _g(z: np.ndarray) -> np.ndarray:
    # alpha^-1 (log(1+r) - log(1-r)) - log(2r/alpha), continued to complex alpha
    root = np.sqrt(1.0 + z * z)
    r = z / (1.0 + root)
    return 2.0 * np.arctanh(r) / z - np.log(2.0 / (1.0 + root))


@lru_cache(maxsize=None)
def _b_coefficients(nodes: int = 128, radius: float = 0.5) -> tuple[float, ...]:
    # g is holomorphic in |alpha| < 1; the trapezoidal rule on |alpha| = radius
    # recovers its Taylor coefficients with aliasing error ~ radius**nodes.
    theta = 2.0 * np.pi * np.arange(nodes) / nodes
    z = radius * np.exp(1j * theta)
    coeffs = np.fft.fft(_g(z)) / nodes
    out = []
    for k in range(MAX_B_ORDER + 1):
        out.append(float(coeffs[2 * k].real) / radius ** (2 * k))
    return tuple(out)


def b_coefficients(max_order: int = MAX_B_ORDER) -> list[float]:
    """(b_0, ..., b_max_order), the Taylor coefficients of g in powers of alpha^2."""
    if not 0 <= max_order <= MAX_B_ORDER:
        raise ValueError(f"max_order must be in [0, {MAX_B_ORDER}]")
    return list(_b_coefficients()[: max_order + 1])


def b_series(alpha: float, order: int = MAX_B_ORDER) -> float:
    """Truncated b(alpha) = sum_{k=1}^{order} b_k alpha^(2k) (b_0 excluded)."""
    if abs(alpha) > 0.5:
        raise ValueError(f"|alpha| must be <= 1/2, got {alpha}")
    if not 1 <= order <= MAX_B_ORDER:
        raise ValueError(f"order must be in [1, {MAX_B_ORDER}]")
    b = _b_coefficients()
    a2 = alpha * alpha
    return sum(b[k] * a2**k for k in range(order, 0, -1))


def _log_comb(d: int, n: int) -> float:
    return math.lgamma(d + 1) - math.lgamma(n + 1) - math.lgamma(d - n + 1)


def binomial_form_estimate(d: int, n: int) -> EstimateReport:
    """2^n C(d,n) exp(n alpha/2 + n alpha^2/4) for n <= d/2; the O(n alpha^3) term is dropped."""
    if d < 1 or n < 0:
        raise ValueError(f"need d >= 1 and n >= 0, got d={d}, n={n}")
    if 2 * n > d:
        raise ValueError(f"binomial form needs n <= d/2, got d={d}, n={n}")
    alpha = n / d
    log_est = n * math.log(2.0) + _log_comb(d, n) + n * alpha / 2 + n * alpha * alpha / 4
    return EstimateReport(d, n, log_est, "binomial_form")


def volume_form_estimate(d: int, n: int) -> EstimateReport:
    """Vol(B_n^d) exp(d / (12 alpha^2)) for n >= 2d; the O(d/alpha^3) term is dropped."""
    _require_positive(d, n)
    if n < 2 * d:
        raise ValueError(f"volume form needs n >= 2d, got d={d}, n={n}")
    alpha = n / d
    log_vol = d * math.log(2.0 * n) - math.lgamma(d + 1)
    return EstimateReport(d, n, log_vol + d / (12 * alpha * alpha), "volume_form")


def log_exact_volume(d: int, n: int) -> float:
    vol = exact_volume(d, n)
    return math.log(vol.numerator) - math.log(vol.denominator)


def pemantle_wilson_estimate(d: int, n: int) -> EstimateReport:
    """Pemantle-Wilson asymptotic for D(d, n) with n/d in a fixed compact range."""
    _require_positive(d, n)
    if n > d:
        raise ValueError(f"need n <= d, got d={d}, n={n}")
    sp = saddle_params(d, n)
    a = sp.alpha
    s = math.sqrt(1.0 + a * a)
    # 1 + a - s = a + (1 - s) = a - a^2/(1 + s)
    gap = a - a * a / (1.0 + s)
    log_corr = 0.5 * (math.log(a) - math.log(d) - 2 * math.log(gap) - 0.5 * math.log(1 + a * a))
    log_est = -0.5 * math.log(2 * math.pi) + sp.log_saddle_value + log_corr
    return EstimateReport(d, n, log_est, "pemantle_wilson")
