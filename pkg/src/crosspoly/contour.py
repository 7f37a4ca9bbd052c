"""Cauchy-integral evaluation of lattice counts on circles |z| = s.

    |S_n ∩ Z^d| = (1/2πi) ∮ h(z)^d z^(-n-1) dz
    |B_n ∩ Z^d| = (1/2πi) ∮ h(z)^d (1 - z)^(-1) z^(-n-1) dz

with h(z) = (1+z)/(1-z). The integrands are periodic and analytic in an
annulus, so the trapezoidal rule converges geometrically in the node count.
All node values are formed as exp(log-magnitude + i phase) relative to the
largest node, so d in the hundreds does not overflow.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .asymptotics import saddle_params, saddle_radius

KERNELS = ("sphere", "ball")
MAX_DEFAULT_RADIUS = 0.85


@dataclass(frozen=True)
class ContourSpec:
    radius: float
    nodes: int = 512
    kernel: str = "ball"

    def __post_init__(self):
        if not 0.0 < self.radius < 1.0:
            raise ValueError(f"radius must lie in (0, 1), got {self.radius}")
        if self.nodes < 16 or self.nodes % 2:
            raise ValueError(f"nodes must be even and >= 16, got {self.nodes}")
        if self.kernel not in KERNELS:
            raise ValueError(f"kernel must be one of {KERNELS}, got {self.kernel!r}")


def default_radius(d: int, n: int) -> float:
    """Saddle radius of h(z)^d z^-n, capped at MAX_DEFAULT_RADIUS.

    Near |z| = 1 the pole of h limits trapezoidal convergence, so large
    n/d ratios use the cap instead of the true saddle. For n = 0 the radius
    of a half-step budget is used.
    """
    alpha = max(n, 0.5) / d
    return min(saddle_radius(alpha), MAX_DEFAULT_RADIUS)


def _log_integrand(d: int, n: int, kernel: str, radius: float, theta: np.ndarray) -> np.ndarray:
    # log of F(z) z^-n, where dz/(2πi z) = dθ/2π; continuous branch of log z
    z = radius * np.exp(1j * theta)
    log_f = d * (np.log1p(z) - np.log1p(-z))
    if kernel == "ball":
        log_f = log_f - np.log1p(-z)
    return log_f - n * (math.log(radius) + 1j * theta)


def _nodes(m: int) -> np.ndarray:
    # θ in (-π, π], so |θ| measures the angular distance from the positive axis
    return 2.0 * np.pi * (np.arange(m) - m // 2 + 1) / m


def _scaled_values(d, n, kernel, radius, theta):
    logs = _log_integrand(d, n, kernel, radius, theta)
    if not np.all(np.isfinite(logs)):
        bad = int(np.flatnonzero(~np.isfinite(logs))[0])
        raise FloatingPointError(f"non-finite integrand at node {bad}")
    shift = float(np.max(logs.real))
    return np.exp(logs - shift), shift


def contour_integral(d: int, n: int, spec: ContourSpec | None = None) -> complex:
    """Trapezoidal value of (1/2πi) ∮ on |z| = spec.radius, as a complex number."""
    if d < 1 or n < 0:
        raise ValueError(f"need d >= 1 and n >= 0, got d={d}, n={n}")
    if spec is None:
        spec = ContourSpec(default_radius(d, n))
    theta = _nodes(spec.nodes)
    vals, shift = _scaled_values(d, n, spec.kernel, spec.radius, theta)
    total = complex(vals.mean())
    scale = math.exp(shift) if shift < 709 else math.inf
    return total * scale


def contour_count(
    d: int,
    n: int,
    spec: ContourSpec | None = None,
    *,
    radius: float | None = None,
    nodes: int = 512,
    kernel: str = "ball",
) -> float:
    """Approximate |B_n ∩ Z^d| (kernel="ball") or |S_n ∩ Z^d| (kernel="sphere")."""
    if spec is None:
        spec = ContourSpec(radius if radius is not None else default_radius(d, n), nodes, kernel)
    return contour_integral(d, n, spec).real


@dataclass(frozen=True)
class SaddleSplit:
    """Arc integrals of the Cauchy representation at the saddle radius.

    W1 is the integral of F(z) z^(-n-1) dz over |arg z| <= delta, W2 over the
    rest of the circle; (W1 + W2)/(2πi) is the count.
    """

    d: int
    n: int
    delta: float
    kernel: str
    radius: float
    W1: complex
    W2: complex

    @property
    def count(self) -> complex:
        return (self.W1 + self.W2) / (2j * math.pi)

    @property
    def w2_ratio(self) -> float:
        """|W2| / (h(r)^d r^-n), to compare with the exp(-c n) decay of the far arc."""
        sp = saddle_params(self.d, self.n)
        return abs(self.W2) / math.exp(sp.log_saddle_value)

    @property
    def w1_ratio(self) -> float:
        sp = saddle_params(self.d, self.n)
        return abs(self.W1) / math.exp(sp.log_saddle_value)


def saddle_split(
    d: int, n: int, delta: float, *, nodes: int = 4096, kernel: str = "ball"
) -> SaddleSplit:
    """Split the contour at the (uncapped) saddle radius into near and far arcs.

    Angles above 1/2 are accepted so that delta -> π can be explored; the
    near arc then exhausts the circle.
    """
    if not 1 <= n <= d:
        raise ValueError(f"saddle split needs 1 <= n <= d, got d={d}, n={n}")
    if not 0.0 < delta <= math.pi:
        raise ValueError(f"delta must lie in (0, π], got {delta}")
    spec = ContourSpec(saddle_params(d, n).r, nodes, kernel)
    theta = _nodes(spec.nodes)
    vals, shift = _scaled_values(d, n, kernel, spec.radius, theta)
    # dz / z = i dθ, trapezoidal weight 2π/M
    weights = vals * (2j * math.pi / spec.nodes) * math.exp(shift)
    near = np.abs(theta) <= delta
    return SaddleSplit(
        d, n, delta, kernel, spec.radius,
        complex(weights[near].sum()), complex(weights[~near].sum()),
    )


def taylor_remainder_check(d: int, n: int, samples: int = 200, delta: float = 0.05) -> float:
    """Worst normalised cubic Taylor remainder of f(z) = log h(z) - alpha log z on the near arc.

    Returns max |f(z) - f(r) - (beta/2)(z - r)^2| * alpha^2 / (45 |z - r|^3)
    over ``samples`` points with 0 < |arg z| <= delta; a value <= 1 means the
    cubic bound holds at every sample.
    """
    if not 1 <= n <= d:
        raise ValueError(f"need 1 <= n <= d, got d={d}, n={n}")
    sp = saddle_params(d, n)
    half = max(samples // 2, 1)
    pos = delta * np.arange(1, half + 1) / half
    theta = np.concatenate([-pos[::-1], pos])[:samples] if samples > 1 else pos
    z = sp.r * np.exp(1j * theta)

    def f(w):
        return np.log1p(w) - np.log1p(-w) - sp.alpha * np.log(w)

    fr = f(np.array(sp.r + 0j))
    remainder = np.abs(f(z) - fr - 0.5 * sp.beta * (z - sp.r) ** 2)
    ratio = remainder * sp.alpha**2 / (45.0 * np.abs(z - sp.r) ** 3)
    return float(np.max(ratio))
