"""Invariant suites behind ``crosspoly verify``.

Each suite yields :class:`Check` records; a suite passes when every check
does. Grids are bounded by ``max_d``/``max_n`` so the CLI can trade coverage
for time.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np

from . import asymptotics as asym
from . import bands, concentration as conc, contour, exact_counts as ec, lattice_ops as lo


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    passed: bool
    detail: str = ""


def _check(suite, name, fn) -> Check:
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failed check, not a crashed suite
        return Check(suite, name, False, f"{type(exc).__name__}: {exc}")
    return Check(suite, name, bool(ok), detail)


def counts_suite(max_d: int, max_n: int) -> Iterator[Check]:
    s = "counts"

    def oracle():
        for d in range(1, max_d + 1):
            for n in range(0, max_n + 1):
                pts = list(ec.enumerate_ball(d, n))
                if len(pts) != ec.delannoy(d, n):
                    return False, f"ball d={d} n={n}"
                if sum(ec.l1_norm(x) == n for x in pts) != ec.sphere_count(d, n):
                    return False, f"sphere d={d} n={n}"
                for m in range(0, n + 1):
                    bf = sum(max(map(abs, x), default=0) <= m for x in pts)
                    if bf != ec.bounded_ball_count(d, n, m):
                        return False, f"bounded d={d} n={n} m={m}"
                for sz in range(0, d + 1):
                    bf = sum(sum(v != 0 for v in x) == sz for x in pts)
                    if bf != ec.support_shell_count(d, sz, n):
                        return False, f"shell d={d} s={sz} n={n}"
        return True, f"d<={max_d} n<={max_n}"

    def symmetry():
        top = max(max_d, max_n)
        bad = [(d, n) for d in range(top + 1) for n in range(top + 1) if ec.delannoy(d, n) != ec.delannoy(n, d)]
        return not bad, f"first failure {bad[:1]}" if bad else f"d,n<={top}"

    def recurrence():
        top = max(max_d, max_n)
        t = ec.delannoy_table(top, top)
        bad = [(d, n) for d in range(top + 1) for n in range(top + 1) if t[d][n] != ec.delannoy(d, n)]
        return not bad, f"first failure {bad[:1]}" if bad else f"d,n<={top}"

    def ehrhart():
        for d in range(1, max_d + 1):
            poly = ec.ehrhart_polynomial(d)
            if any(c <= 0 for c in poly.coefficients):
                return False, f"nonpositive coefficient at d={d}"
            if poly.coefficients[-1] != ec.exact_volume(d, 1):
                return False, f"leading coefficient d={d}"
            for n in range(max_n + 1):
                if poly.evaluate(n) != ec.delannoy(d, n):
                    return False, f"evaluation d={d} n={n}"
        return True, f"d<={max_d}"

    def volume_bound():
        bad = [(d, n) for d in range(1, max_d + 1) for n in range(max_n + 1) if ec.delannoy(d, n) < ec.exact_volume(d, n)]
        return not bad, f"first failure {bad[:1]}" if bad else f"d<={max_d} n<={max_n}"

    for name, fn in [("oracle_equivalence", oracle), ("symmetry", symmetry),
                     ("recurrence", recurrence), ("ehrhart", ehrhart),
                     ("volume_lower_bound", volume_bound)]:
        yield _check(s, name, fn)


def asymptotics_suite(max_d: int, max_n: int) -> Iterator[Check]:
    s = "asymptotics"

    def coeffs():
        b = asym.b_coefficients(2)
        err = max(abs(b[0] - 1), abs(b[1] - 1 / 12), abs(b[2] + 3 / 160))
        return err <= 1e-8, f"max error {err:.3g}"

    def band():
        lo, hi = bands.UNIFORM_BAND
        for d in range(1, max_d + 1):
            for n in range(1, min(d, max_n) + 1):
                ratio = math.exp(math.log(ec.delannoy(d, n)) - asym.uniform_estimate(d, n).log_estimate)
                if not lo <= ratio <= hi:
                    return False, f"d={d} n={n} ratio={ratio:.4g}"
        return True, f"band {bands.UNIFORM_BAND}"

    def saddle():
        for d in range(1, max_d + 1):
            for n in range(1, d + 1):
                p = asym.saddle_params(d, n)
                if not (p.alpha / (math.sqrt(2) + 1) <= p.r * (1 + 1e-12) and p.r <= p.alpha / 2 * (1 + 1e-12)):
                    return False, f"r interval d={d} n={n}"
                if not (4 / p.alpha <= p.beta * (1 + 1e-12) and p.beta <= 9 / p.alpha):
                    return False, f"beta interval d={d} n={n}"
        return True, ""

    for name, fn in [("published_b_coefficients", coeffs), ("uniform_band", band), ("saddle_intervals", saddle)]:
        yield _check(s, name, fn)


def contour_suite(max_d: int, max_n: int) -> Iterator[Check]:
    s = "contour"

    def accuracy():
        worst = 0.0
        for d in range(1, max_d + 1):
            for n in range(0, max_n + 1):
                for kernel, exact in (("ball", ec.delannoy(d, n)), ("sphere", ec.sphere_count(d, n))):
                    v = contour.contour_count(d, n, nodes=512, kernel=kernel)
                    worst = max(worst, abs(v - exact) / exact)
        return worst <= 1e-8, f"max relative error {worst:.3g}"

    yield _check(s, "quadrature_accuracy", accuracy)


def lattice_suite(max_d: int, max_n: int, seed: int = 0) -> Iterator[Check]:
    s = "lattice"
    rng = np.random.default_rng(seed)
    dims = range(1, min(max_d, 4) + 1)

    def multipliers():
        worst = 0.0
        for d in dims:
            for n in range(0, min(max_n, 6) + 1):
                xi = rng.random(d) - 0.5
                worst = max(worst, abs(lo.multiplier_m(d, n, xi) - lo.direct_symbol(ec.enumerate_ball(d, n), xi)))
                worst = max(worst, abs(lo.multiplier_s(d, n, xi) - lo.direct_symbol(ec.enumerate_sphere(d, n), xi)))
        return worst <= 1e-12, f"max deviation {worst:.3g}"

    def contraction():
        for d in dims:
            f = lo.GridFunction(rng.normal(size=(5,) * d))
            for R in range(0, min(max_n, 4) + 1):
                g = lo.ball_average(f, R, mode="full")
                for p in (1, 2, math.inf):
                    if g.norm(p) > f.norm(p) * (1 + 1e-10):
                        return False, f"d={d} R={R} p={p}"
        return True, ""

    def partition():
        for d in dims:
            f = lo.GridFunction(rng.normal(size=(5,) * d))
            for R in range(0, min(max_n, 4) + 1):
                lhs = ec.delannoy(d, R) * lo.ball_average(f, R).values
                rhs = sum(ec.sphere_count(d, k) * lo.sphere_average(f, k).values for k in range(R + 1))
                if np.max(np.abs(lhs - rhs)) > 1e-10 * max(1.0, np.max(np.abs(lhs))):
                    return False, f"d={d} R={R}"
        return True, ""

    for name, fn in [("multiplier_vs_direct", multipliers), ("contraction", contraction),
                     ("sphere_ball_partition", partition)]:
        yield _check(s, name, fn)


def concentration_suite(max_d: int, max_n: int) -> Iterator[Check]:
    s = "concentration"

    def oracle():
        for d in range(1, max_d + 1):
            for n in range(0, max_n + 1):
                pts = list(ec.enumerate_ball(d, n))
                for K in range(0, 3):
                    for a in range(0, min(3, n) + 1):
                        for surface in (False, True):
                            bf = sum(
                                (not surface or ec.l1_norm(x) == n)
                                and sum(abs(v) for v in x if abs(v) <= K) <= n - a
                                for x in pts
                            )
                            if bf != conc.deficit_count(d, n, K, a, surface).bad_count:
                                return False, f"deficit d={d} n={n} K={K} a={a} surface={surface}"
                bf = sum(ec.l1_norm(x) == n and sum(abs(v) == 1 for v in x) <= n / 2 for x in pts)
                if bf != conc.few_ones_count(d, n).bad_count:
                    return False, f"few_ones d={d} n={n}"
                for K in (1, 2):
                    bf = sum(any(abs(v) >= 6 * K for v in x) for x in pts)
                    if bf != conc.large_coordinate_count(d, n, K).bad_count:
                        return False, f"large d={d} n={n} K={K}"
        return True, f"d<={max_d} n<={max_n}"

    yield _check(s, "oracle_equivalence", oracle)


SUITES: dict[str, Callable[..., Iterator[Check]]] = {
    "counts": counts_suite,
    "asymptotics": asymptotics_suite,
    "contour": contour_suite,
    "lattice": lattice_suite,
    "concentration": concentration_suite,
}


def run_suites(names, max_d: int, max_n: int) -> list[Check]:
    if "all" in names:
        names = list(SUITES)
    out = []
    for name in names:
        out.extend(SUITES[name](max_d, max_n))
    return out
