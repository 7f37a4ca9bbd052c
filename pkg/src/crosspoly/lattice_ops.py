"""Discrete averaging operators over l1 balls/spheres and their Fourier symbols.

Functions on Z^d live on a finite box [-L, L]^d (:class:`GridFunction`) and
are extended by zero outside it. Convolutions come in two modes:

``"same"``  output on the input box; values within distance R of the box
            edge see the zero padding.
``"full"``  output on the box [-(L+R), L+R]^d, which contains the whole
            support of the average, so the result is the exact average of
            the zero-extended function on all of Z^d.

Symbols use e(y) = exp(-2πi y) and the torus norm
||xi|| = sqrt(sum_i sin^2(π xi_i)).
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np
from scipy import signal

from . import guards
from .exact_counts import (
    composition_class_count,
    delannoy,
    enumerate_ball,
    sphere_count,
)

MAX_GRID_DIM = 4
DIRECT_CONV_LIMIT = 10**5
# trial-function support per dimension for operator_norm_probe
DEFAULT_PROBE_SUPPORT = {1: 24, 2: 8, 3: 4, 4: 3}


@dataclass(frozen=True)
class GridFunction:
    """Real function on [-L, L]^d; ``values[i_1, ..., i_d]`` is f(i_1 - L, ..., i_d - L)."""

    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim < 1 or v.ndim > MAX_GRID_DIM:
            raise ValueError(f"dimension must be in 1..{MAX_GRID_DIM}, got {v.ndim}")
        side = v.shape[0]
        if side % 2 == 0 or any(s != side for s in v.shape):
            raise ValueError(f"values must be a cube with odd side, got shape {v.shape}")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def dimension(self) -> int:
        return self.values.ndim

    @property
    def half_width(self) -> int:
        return (self.values.shape[0] - 1) // 2

    @classmethod
    def zeros(cls, d: int, half_width: int) -> "GridFunction":
        guards.check("box", (2 * half_width + 1) ** d)
        return cls(np.zeros((2 * half_width + 1,) * d))

    @classmethod
    def delta(cls, d: int, half_width: int, at: Sequence[int] | None = None) -> "GridFunction":
        v = np.zeros((2 * half_width + 1,) * d)
        v[tuple(half_width + c for c in (at or (0,) * d))] = 1.0
        return cls(v)

    @classmethod
    def from_points(cls, d: int, half_width: int, points: dict) -> "GridFunction":
        v = np.zeros((2 * half_width + 1,) * d)
        for x, val in points.items():
            v[tuple(half_width + c for c in x)] = val
        return cls(v)

    def index_of(self, point: Sequence[int]) -> tuple[int, ...]:
        L = self.half_width
        if len(point) != self.dimension or any(abs(c) > L for c in point):
            raise IndexError(f"point {tuple(point)} outside box [-{L}, {L}]^{self.dimension}")
        return tuple(c + L for c in point)

    def point_of(self, index: Sequence[int]) -> tuple[int, ...]:
        return tuple(int(i) - self.half_width for i in index)

    def __getitem__(self, point: Sequence[int]) -> float:
        return float(self.values[self.index_of(point)])

    def flat(self) -> np.ndarray:
        """Values as a vector of length (2L+1)^d in C order of the indices."""
        return self.values.ravel()

    def norm(self, p: float) -> float:
        return lp_norm(self.values, p)

    def restrict(self, half_width: int) -> "GridFunction":
        k = self.half_width - half_width
        if k < 0:
            raise ValueError("cannot restrict to a larger box")
        sl = tuple(slice(k, k + 2 * half_width + 1) for _ in range(self.dimension))
        return GridFunction(self.values[sl])


def lp_norm(values: np.ndarray, p: float) -> float:
    a = np.abs(np.asarray(values, dtype=float)).ravel()
    if math.isinf(p):
        return float(a.max(initial=0.0))
    if p == 1:
        return float(a.sum())
    return float((a**p).sum() ** (1.0 / p))


@lru_cache(maxsize=256)
def _kernel(d: int, R: int, kind: str) -> np.ndarray:
    guards.check("box", (2 * R + 1) ** d)
    k = np.zeros((2 * R + 1,) * d)
    for x in enumerate_ball(d, R):
        if kind == "ball" or sum(abs(c) for c in x) == R:
            k[tuple(c + R for c in x)] = 1.0
    count = delannoy(d, R) if kind == "ball" else sphere_count(d, R)
    k /= count
    k.setflags(write=False)
    return k


def _average(f: GridFunction, R: int, kind: str, mode: str) -> GridFunction:
    if R < 0 or int(R) != R:
        raise ValueError(f"radius must be a nonnegative integer, got {R}")
    if mode not in ("same", "full"):
        raise ValueError(f"mode must be 'same' or 'full', got {mode!r}")
    d = f.dimension
    out_width = f.half_width + (R if mode == "full" else 0)
    guards.check("box", (2 * out_width + 1) ** d)
    if R == 0:
        vals = f.values if mode == "same" else np.pad(f.values, 0)
        return GridFunction(vals)
    kernel = _kernel(d, R, kind)
    # direct sums keep small stencils exact; FFT error is ~1e-16 relative
    method = "direct" if f.values.size * kernel.size <= DIRECT_CONV_LIMIT else "fft"
    out = signal.convolve(f.values, kernel, mode=mode, method=method)
    return GridFunction(out)


def ball_average(f: GridFunction, R: int, mode: str = "same") -> GridFunction:
    """(M_R f)(x) = |B_R ∩ Z^d|^-1 sum_{y in B_R} f(x - y)."""
    return _average(f, R, "ball", mode)


def sphere_average(f: GridFunction, R: int, mode: str = "same") -> GridFunction:
    """Average of f(x - y) over y in S_R ∩ Z^d."""
    return _average(f, R, "sphere", mode)


class RadiusKind(str, enum.Enum):
    FULL_RANGE = "full_range"
    DYADIC = "dyadic"
    EXPLICIT_LIST = "explicit_list"
    INTERVAL = "interval"


@dataclass(frozen=True)
class RadiusSet:
    """A finite set of integer radii.

    full_range(hi)      {0, 1, ..., hi}
    dyadic(hi, lo=1)    {2^k : lo <= 2^k <= hi}
    interval(lo, hi)    {lo, ..., hi}
    explicit([...])     the listed radii
    """

    kind: RadiusKind
    params: tuple[int, ...]

    @classmethod
    def full_range(cls, hi: int) -> "RadiusSet":
        return cls(RadiusKind.FULL_RANGE, (hi,))

    @classmethod
    def dyadic(cls, hi: int, lo: int = 1) -> "RadiusSet":
        return cls(RadiusKind.DYADIC, (lo, hi))

    @classmethod
    def interval(cls, lo: int, hi: int) -> "RadiusSet":
        return cls(RadiusKind.INTERVAL, (lo, hi))

    @classmethod
    def explicit(cls, radii: Iterable[int]) -> "RadiusSet":
        return cls(RadiusKind.EXPLICIT_LIST, tuple(int(r) for r in radii))

    @classmethod
    def parse(cls, text: str) -> "RadiusSet":
        """Parse ``range:HI``, ``dyadic:HI[:LO]``, ``interval:LO:HI`` or ``list:R1,R2,...``."""
        head, _, rest = text.partition(":")
        try:
            if head == "range":
                return cls.full_range(int(rest))
            if head == "dyadic":
                parts = [int(p) for p in rest.split(":")]
                return cls.dyadic(parts[0], *(parts[1:2] or [1]))
            if head == "interval":
                lo, hi = (int(p) for p in rest.split(":"))
                return cls.interval(lo, hi)
            if head == "list":
                return cls.explicit(int(p) for p in rest.split(","))
        except ValueError as exc:
            raise ValueError(f"bad radius set {text!r}: {exc}") from None
        raise ValueError(f"unknown radius set {text!r}")

    def realize(self, max_radius: int | None = None) -> tuple[int, ...]:
        k, p = self.kind, self.params
        if k is RadiusKind.FULL_RANGE:
            radii = range(0, p[0] + 1)
        elif k is RadiusKind.INTERVAL:
            radii = range(max(p[0], 0), p[1] + 1)
        elif k is RadiusKind.DYADIC:
            lo, hi = p
            radii = [1 << j for j in range(0, max(hi, 1).bit_length() + 1) if lo <= 1 << j <= hi]
        else:
            radii = p
        out = sorted({r for r in radii if r >= 0 and (max_radius is None or r <= max_radius)})
        return tuple(out)


def maximal_function(
    f: GridFunction, E: RadiusSet | Iterable[int], kind: str = "ball", mode: str = "same"
) -> GridFunction:
    """sup over R in E of |A_R f|, A = ball or sphere averages.

    In ``"full"`` mode every average is embedded in the box of the largest
    radius, so the result is exact on Z^d.
    """
    radii = E.realize() if isinstance(E, RadiusSet) else tuple(sorted(set(E)))
    if not radii:
        raise ValueError("realized radius set is empty")
    avg = ball_average if kind == "ball" else sphere_average
    top = f.half_width + (radii[-1] if mode == "full" else 0)
    best = np.zeros((2 * top + 1,) * f.dimension)
    for R in radii:
        a = np.abs(avg(f, R, mode).values)
        pad = top - (a.shape[0] - 1) // 2
        if pad:
            a = np.pad(a, pad)
        np.maximum(best, a, out=best)
    return GridFunction(best)


def _trial_functions(d: int, support: int, trials: int, p: float, rng: np.random.Generator):
    side = 2 * support + 1
    yield "delta", GridFunction.delta(d, support)
    if not math.isinf(p):
        axes = np.meshgrid(*([np.arange(-support, support + 1)] * d), indexing="ij")
        l1 = sum(np.abs(a) for a in axes)
        yield "power_decay", GridFunction((1.0 + l1) ** (-d / p))
    for R in range(1, support + 1):
        vals = np.zeros((side,) * d)
        for x in enumerate_ball(d, R):
            vals[tuple(c + support for c in x)] = 1.0
        yield f"ball_indicator_{R}", GridFunction(vals)
    for t in range(trials):
        yield f"random_sign_{t}", GridFunction(rng.choice([-1.0, 1.0], size=(side,) * d))
        sparse = np.zeros((side,) * d)
        mask = rng.random((side,) * d) < 0.1
        sparse[mask] = rng.random(int(mask.sum()))
        if not mask.any():
            sparse[(support,) * d] = 1.0
        yield f"random_sparse_{t}", GridFunction(sparse)
        yield f"random_positive_{t}", GridFunction(rng.random((side,) * d))


@dataclass(frozen=True)
class NormProbe:
    ratio: float
    witness: str
    seed: int
    radii: tuple[int, ...]


def operator_norm_probe(
    d: int,
    E: RadiusSet | Iterable[int],
    p: float,
    trials: int = 4,
    seed: int = 0,
    support: int | None = None,
    kind: str = "ball",
) -> NormProbe:
    """Empirical lower bound for the l^p operator norm of the maximal function over E.

    Trial functions live on [-support, support]^d and the maximal function is
    evaluated in ``"full"`` mode, so every ratio is exact on Z^d (no boundary
    truncation). The trial family is a delta, ball indicators, the power
    profile (1 + |x|_1)^(-d/p), and seeded random sign / sparse / positive
    functions.
    """
    if d > MAX_GRID_DIM:
        raise ValueError(f"d must be <= {MAX_GRID_DIM}")
    if p < 1:
        raise ValueError("p must be >= 1")
    radii = E.realize() if isinstance(E, RadiusSet) else tuple(sorted(set(E)))
    if not radii:
        raise ValueError("realized radius set is empty")
    guards.check("box", (2 * ((support or DEFAULT_PROBE_SUPPORT[d]) + radii[-1]) + 1) ** d)
    if support is None:
        support = DEFAULT_PROBE_SUPPORT[d]
    rng = np.random.default_rng(seed)
    best, witness = -1.0, ""
    for name, f in _trial_functions(d, support, trials, p, rng):
        norm_f = f.norm(p)
        if norm_f == 0:
            continue
        ratio = maximal_function(f, radii, kind, mode="full").norm(p) / norm_f
        if ratio > best:
            best, witness = ratio, name
    return NormProbe(best, witness, seed, radii)


# --- multiplier symbols ---------------------------------------------------


def wrap_frequency(xi: Sequence[float]) -> np.ndarray:
    """Representative of xi in [-1/2, 1/2)^d."""
    x = np.asarray(xi, dtype=float)
    return x - np.floor(x + 0.5)


def torus_norm(xi: Sequence[float]) -> float:
    return float(np.sqrt(np.sum(np.sin(np.pi * np.asarray(xi, dtype=float)) ** 2)))


def _budget_symbol(d: int, n: int, xi: Sequence[float]) -> tuple[np.ndarray, float]:
    """Per-budget sums sum_{|x|_1 = b} e(x·xi) for b = 0..n, as (scaled vector, log scale)."""
    xi = np.asarray(xi, dtype=float)
    if xi.shape != (d,):
        raise ValueError(f"frequency must have {d} coordinates, got shape {xi.shape}")
    guards.check("multiplier", d * (n + 1) ** 2)
    ks = np.arange(1, n + 1)
    vec = np.zeros(n + 1)
    vec[0] = 1.0
    log_scale = 0.0
    for t in xi:
        # e(k t) + e(-k t) = 2 cos(2π k t): the ±k pair makes each profile real
        profile = np.empty(n + 1)
        profile[0] = 1.0
        profile[1:] = 2.0 * np.cos(2.0 * np.pi * ks * t)
        vec = np.convolve(vec, profile)[: n + 1]
        peak = float(np.max(np.abs(vec)))
        if peak > 0:
            vec /= peak
            log_scale += math.log(peak)
    return vec, log_scale


def _normalise(total: float, log_scale: float, count: int) -> float:
    if total == 0:
        return 0.0
    mag = math.log(abs(total)) + log_scale - math.log(count)
    return math.copysign(math.exp(mag), total)


def multiplier_m(d: int, n: int, xi: Sequence[float]) -> float:
    """m_n(xi) = |B_n|^-1 sum_{x in B_n} e(x·xi), by budget DP in O(d n^2).

    The ball is symmetric under x -> -x, so the symbol is real and returned as
    a float.
    """
    vec, log_scale = _budget_symbol(d, n, xi)
    return _normalise(float(vec.sum()), log_scale, delannoy(d, n))


def multiplier_s(d: int, n: int, xi: Sequence[float]) -> float:
    """s_n(xi) = |S_n|^-1 sum_{x in S_n} e(x·xi)."""
    vec, log_scale = _budget_symbol(d, n, xi)
    return _normalise(float(vec[n]), log_scale, sphere_count(d, n))


def direct_symbol(points: Iterable[Sequence[int]], xi: Sequence[float]) -> complex:
    """Brute-force average of e(x·xi) over the given points."""
    pts = np.array(list(points), dtype=float)
    if pts.size == 0:
        raise ValueError("empty point set")
    phases = pts @ np.asarray(xi, dtype=float)
    return complex(np.exp(-2j * np.pi * phases).mean())


def beta_multiplier(d: int, profile: Sequence[int], xi: Sequence[float]) -> complex:
    """beta_j(xi): average of e(x·xi) over D_j, by enumeration of {-K..K}^d."""
    K = len(profile)
    total = composition_class_count(d, profile)
    if K == 0:
        return 1.0 + 0j
    guards.check("enumeration", (2 * K + 1) ** d)
    grid = np.stack(np.meshgrid(*([np.arange(-K, K + 1)] * d), indexing="ij"), -1).reshape(-1, d)
    absg = np.abs(grid)
    keep = np.ones(len(grid), dtype=bool)
    for k, j in enumerate(profile, start=1):
        keep &= (absg == k).sum(axis=1) == j
    pts = grid[keep]
    if len(pts) != total:
        raise AssertionError(f"enumerated {len(pts)} points, expected |D_j| = {total}")
    return direct_symbol(pts, xi)


class TorusPart(str, enum.Enum):
    T0 = "T0"
    T1 = "T1"


def torus_partition(xi: Sequence[float]) -> TorusPart:
    """T0 iff ||xi|| <= ||xi + 1/2||."""
    x = np.asarray(xi, dtype=float)
    return TorusPart.T0 if torus_norm(x) <= torus_norm(x + 0.5) else TorusPart.T1


@dataclass(frozen=True)
class MultiplierScan:
    d: int
    n: int
    samples: int
    seed: int
    local_constant: float
    global_constant: float
    local_points: int


def sample_frequencies(d: int, alpha: float, samples: int, seed: int) -> np.ndarray:
    """Seeded frequency sample: uniform, axis-aligned, and small-norm stratified points."""
    rng = np.random.default_rng(seed)
    third = max(samples // 3, 1)
    uniform = rng.random((third, d)) - 0.5
    axis = np.zeros((third, d))
    axis[np.arange(third), rng.integers(0, d, third)] = rng.random(third) - 0.5
    # directions scaled so that alpha ||xi|| spans (0, 1] log-uniformly
    dirs = rng.normal(size=(samples - 2 * third, d))
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    target = np.exp(rng.uniform(np.log(1e-3), 0.0, len(dirs))) / alpha
    small = dirs * np.minimum(target, 0.5)[:, None] / np.pi
    return np.vstack([uniform, axis, small])


def multiplier_bound_scan(d: int, n: int, samples: int = 300, seed: int = 0) -> MultiplierScan:
    """Empirical constants in |m_n - 1| <~ (alpha ||xi||)^2 and |m_n| <~ (alpha ||xi||)^-1 + alpha^(-1/7)."""
    if n <= d:
        raise ValueError(f"the bound scan needs n > d, got d={d}, n={n}")
    alpha = n / d
    local = glob = 0.0
    local_points = 0
    for xi in sample_frequencies(d, alpha, samples, seed):
        s = alpha * torus_norm(xi)
        if s == 0:
            continue
        m = multiplier_m(d, n, xi)
        glob = max(glob, abs(m) / (1.0 / s + alpha ** (-1.0 / 7.0)))
        if s <= 1.0:
            local_points += 1
            local = max(local, abs(m - 1.0) / s**2)
    return MultiplierScan(d, n, samples, seed, local, glob, local_points)


def operator_norm_curve(
    d: int,
    radii: Sequence[int],
    p: float,
    trials: int = 4,
    seed: int = 0,
    support: int | None = None,
    kind: str = "ball",
) -> list[float]:
    """Norm-probe ratios for the nested radius sets radii[:1], radii[:2], ...

    Same trial family as :func:`operator_norm_probe`; each average is
    computed once and the running maximum is extended radius by radius.
    """
    radii = list(radii)
    if not radii:
        raise ValueError("radius sequence is empty")
    if support is None:
        support = DEFAULT_PROBE_SUPPORT[d]
    top = max(radii)
    guards.check("box", (2 * (support + top) + 1) ** d)
    avg = ball_average if kind == "ball" else sphere_average
    rng = np.random.default_rng(seed)
    best = [0.0] * len(radii)
    for _, f in _trial_functions(d, support, trials, p, rng):
        norm_f = f.norm(p)
        if norm_f == 0:
            continue
        running = np.zeros((2 * (support + top) + 1,) * d)
        for i, R in enumerate(radii):
            a = np.abs(avg(f, R, "full").values)
            np.maximum(running, np.pad(a, top - R), out=running)
            best[i] = max(best[i], lp_norm(running, p) / norm_f)
    return best
