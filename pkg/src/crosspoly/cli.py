"""Batch command-line front end: ``crosspoly SUBCOMMAND [options]``.

Every subcommand expands its parameter ranges into a deterministic list of
tuples, evaluates them (optionally across ``--jobs`` worker processes), and
emits one homogeneous table as CSV or JSON.

Ranges accept ``A``, ``A:B`` (inclusive), ``A:B:STEP`` and comma lists of
those. Instead of ``--n`` the budget can be a function of the dimension:
``--n-of-d sqrt|linear|pow32|square --scale C`` gives n = floor(C f(d)).

Exit codes: 0 success, 1 usage or domain error, 2 guard violation,
3 verification failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import asymptotics as asym
from . import concentration as conc
from . import contour as ctr
from . import exact_counts as ec
from . import guards
from . import lattice_ops as lo
from . import verify as vf

OUTPUT_DIR_ENV = "CROSSPOLY_OUTPUT_DIR"
PROVENANCE = ("exact", "estimate", "quadrature", "monte_carlo")

EXIT_OK, EXIT_USAGE, EXIT_GUARD, EXIT_VERIFY = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{message} (see {self.prog} --help)")


# --- parameter grammar ----------------------------------------------------


def parse_int_range(text: str) -> list[int]:
    """``"3"``, ``"1:10"``, ``"1:10:3"`` or comma lists of those; order kept, duplicates dropped."""
    out: list[int] = []
    try:
        for item in text.split(","):
            parts = [int(p) for p in item.strip().split(":")]
            if len(parts) == 1:
                vals = parts
            elif len(parts) in (2, 3):
                step = parts[2] if len(parts) == 3 else 1
                if step <= 0:
                    raise ValueError("step must be positive")
                vals = range(parts[0], parts[1] + 1, step)
            else:
                raise ValueError("too many ':'")
            out.extend(v for v in vals if v not in out)
    except ValueError as exc:
        raise UsageError(f"unparseable range {text!r}: {exc}") from None
    if not out:
        raise UsageError(f"range {text!r} is empty")
    return out


def parse_float_list(text: str) -> list[float]:
    try:
        out = [float(p) for p in text.split(",")]
    except ValueError:
        raise UsageError(f"unparseable number list {text!r}") from None
    if not out:
        raise UsageError(f"list {text!r} is empty")
    return out


N_OF_D = ("sqrt", "linear", "pow32", "square")


def n_of_d(kind: str, d: int, scale: Fraction) -> int:
    """floor(scale * f(d)), evaluated exactly."""
    if scale < 0:
        raise UsageError("--scale must be nonnegative")
    if kind == "linear":
        return math.floor(scale * d)
    if kind == "square":
        return math.floor(scale * d * d)
    # floor(sqrt(x)) = isqrt(floor(x)) for x >= 0
    if kind == "sqrt":
        return math.isqrt(math.floor(scale * scale * d))
    if kind == "pow32":
        return math.isqrt(math.floor(scale * scale * d**3))
    raise UsageError(f"unknown --n-of-d {kind!r}")


def _dn_pairs(args) -> list[tuple[int, int]]:
    ds = parse_int_range(args.d)
    if args.n_of_d:
        if args.n is not None:
            raise UsageError("--n and --n-of-d are mutually exclusive")
        try:
            scale = Fraction(args.scale)
        except ValueError:
            raise UsageError(f"unparseable --scale {args.scale!r}") from None
        return [(d, n_of_d(args.n_of_d, d, scale)) for d in ds]
    if args.n is None:
        raise UsageError("one of --n or --n-of-d is required")
    return list(itertools.product(ds, parse_int_range(args.n)))


# --- value formatting -----------------------------------------------------


def fmt_real(x: float) -> str:
    return format(float(x), ".17g")


def _cell(v):
    """In-memory representation of one output value."""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return v if math.isfinite(v) else str(v)
    return str(v)


def _csv_cell(v) -> str:
    return fmt_real(v) if isinstance(v, float) else v


def emit(rows: list[dict], fmt: str, columns: list[str] | None = None) -> bytes:
    """Serialise rows as CSV (header + LF lines) or a JSON array; byte-deterministic."""
    rows = [{k: _cell(v) for k, v in r.items()} for r in rows]
    if fmt == "json":
        return (json.dumps(rows, indent=2, ensure_ascii=False) + "\n").encode("utf-8")
    if fmt != "csv":
        raise ValueError(f"unknown format {fmt!r}")
    header = list(rows[0]) if rows else list(columns or [])
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for r in rows:
        if list(r) != header:
            raise ValueError("rows are not homogeneous")
        writer.writerow([_csv_cell(r[k]) for k in header])
    return buf.getvalue().encode("utf-8")


def output_path(path: str | None) -> Path | None:
    if path is None or path == "-":
        return None
    p = Path(path)
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not p.is_absolute():
        p = Path(base) / p
    return p


def write_output(data: bytes, path: str | None) -> None:
    target = output_path(path)
    if target is None:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
        return
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_bytes(data)
    except OSError as exc:
        raise OSError(f"cannot write {target}: {exc.strerror or exc}") from exc


# --- subcommand bodies ----------------------------------------------------
# Each returns a list of (row, provenance); rows carry inputs then outputs.


def _exact_row(**kw):
    return [(kw, "exact")]


def run_delannoy(d, n):
    return _exact_row(d=d, n=n, value=ec.delannoy(d, n))


def run_sphere(d, n):
    return _exact_row(d=d, n=n, value=ec.sphere_count(d, n))


def run_shell(d, s, n):
    return _exact_row(d=d, s=s, n=n, value=ec.support_shell_count(d, s, n))


def run_bounded(d, n, m):
    return _exact_row(d=d, n=n, m=m, value=ec.bounded_ball_count(d, n, m))


def run_ehrhart(d):
    poly = ec.ehrhart_polynomial(d)
    return [({"d": d, "k": k, "coefficient": c, "coefficient_float": float(c)}, "exact")
            for k, c in enumerate(poly.coefficients)]


ESTIMATORS = {
    "uniform": asym.uniform_estimate,
    "binomial": asym.binomial_form_estimate,
    "volume": asym.volume_form_estimate,
    "pw": asym.pemantle_wilson_estimate,
}


def run_estimate(d, n, which):
    rep = ESTIMATORS[which](d, n)
    exact = ec.delannoy(d, n)
    log_exact = math.log(exact)
    return [({
        "d": d, "n": n, "which": which,
        "log_estimate": rep.log_estimate, "estimate": rep.estimate,
        "exact": exact, "log_exact": log_exact,
        "log_ratio": log_exact - rep.log_estimate,
    }, "estimate")]


def run_bseries_coeff(k):
    return [({"k": k, "b_k": asym.b_coefficients(k)[k]}, "estimate")]


def run_bseries_value(alpha, order):
    return [({"alpha": alpha, "order": order, "b": asym.b_series(alpha, order)}, "estimate")]


def run_contour(d, n, kernel, radius, nodes):
    spec = ctr.ContourSpec(radius if radius is not None else ctr.default_radius(d, n), nodes, kernel)
    value = ctr.contour_count(d, n, spec)
    exact = ec.delannoy(d, n) if kernel == "ball" else ec.sphere_count(d, n)
    return [({
        "d": d, "n": n, "kernel": kernel, "radius": spec.radius, "nodes": nodes,
        "value": value, "exact": exact, "rel_error": abs(value - exact) / exact,
    }, "quadrature")]


def run_saddle_split(d, n, delta, kernel, nodes):
    sp = ctr.saddle_split(d, n, delta, nodes=nodes, kernel=kernel)
    exact = ec.delannoy(d, n) if kernel == "ball" else ec.sphere_count(d, n)
    return [({
        "d": d, "n": n, "delta": delta, "kernel": kernel, "radius": sp.radius, "nodes": nodes,
        "abs_W1": abs(sp.W1), "abs_W2": abs(sp.W2),
        "w1_ratio": sp.w1_ratio, "w2_ratio": sp.w2_ratio,
        "count": sp.count.real, "exact": exact,
    }, "quadrature")]


def _seeded_grid(d, support, seed):
    if d > lo.MAX_GRID_DIM:
        raise ValueError(f"grid dimension must be <= {lo.MAX_GRID_DIM}")
    guards.check("box", (2 * support + 1) ** d)
    rng = np.random.default_rng(seed)
    return lo.GridFunction(rng.normal(size=(2 * support + 1,) * d))


def run_average(d, R, kind, p, support, mode, seed):
    f = _seeded_grid(d, support, seed)
    avg = lo.ball_average if kind == "ball" else lo.sphere_average
    g = avg(f, R, mode)
    nf, ng = f.norm(p), g.norm(p)
    return [({
        "d": d, "R": R, "kind": kind, "p": p, "support": support, "mode": mode, "seed": seed,
        "norm_f": nf, "norm_avg": ng, "ratio": ng / nf,
    }, "exact")]


def run_maximal(d, radii, kind, p, support, mode, seed):
    f = _seeded_grid(d, support, seed)
    E = lo.RadiusSet.parse(radii)
    g = lo.maximal_function(f, E, kind, mode)
    nf, ng = f.norm(p), g.norm(p)
    return [({
        "d": d, "radii": radii, "kind": kind, "p": p, "support": support, "mode": mode,
        "seed": seed, "norm_f": nf, "norm_max": ng, "ratio": ng / nf,
    }, "exact")]


def run_norm_probe(d, radii, kind, p, trials, support, seed, curve):
    E = lo.RadiusSet.parse(radii).realize()
    if not E:
        raise ValueError(f"radius set {radii!r} is empty")
    if curve:
        ratios = lo.operator_norm_curve(d, E, p, trials, seed, support, kind)
        return [({"d": d, "radii": radii, "kind": kind, "p": p, "seed": seed,
                  "prefix_max_radius": R, "prefix_size": i + 1, "ratio": r}, "estimate")
                for i, (R, r) in enumerate(zip(E, ratios))]
    pr = lo.operator_norm_probe(d, E, p, trials, seed, support, kind)
    return [({"d": d, "radii": radii, "kind": kind, "p": p, "seed": seed,
              "prefix_max_radius": E[-1], "prefix_size": len(E), "ratio": pr.ratio,
              "witness": pr.witness}, "estimate")]


def _xi_str(xi):
    return ";".join(fmt_real(x) for x in xi)


def _frequencies(d, xi, samples, seed):
    if xi is not None:
        vec = parse_float_list(xi)
        if len(vec) != d:
            raise UsageError(f"--xi has {len(vec)} coordinates, expected d = {d}")
        return [np.array(vec)]
    rng = np.random.default_rng(seed)
    return list(rng.random((samples, d)) - 0.5)


def run_multiplier(d, n, xi, samples, seed, direct):
    rows = []
    for i, x in enumerate(_frequencies(d, xi, samples, seed)):
        row = {
            "d": d, "n": n, "sample": i, "xi": _xi_str(x),
            "part": lo.torus_partition(x).value, "torus_norm": lo.torus_norm(x),
            "m": lo.multiplier_m(d, n, x), "s": lo.multiplier_s(d, n, x),
        }
        if direct:
            row["m_direct"] = lo.direct_symbol(ec.enumerate_ball(d, n), x).real
            row["s_direct"] = lo.direct_symbol(ec.enumerate_sphere(d, n), x).real
        rows.append((row, "exact"))
    return rows


def run_mult_scan(d, n, samples, seed):
    sc = lo.multiplier_bound_scan(d, n, samples, seed)
    return [({"d": d, "n": n, "samples": samples, "seed": seed,
              "local_constant": sc.local_constant, "global_constant": sc.global_constant,
              "local_points": sc.local_points}, "estimate")]


def run_beta(d, profile, xi, samples, seed):
    prof = [int(p) for p in profile.split(",")] if profile else []
    rows = []
    for i, x in enumerate(_frequencies(d, xi, samples, seed)):
        b = lo.beta_multiplier(d, prof, x)
        rows.append(({"d": d, "profile": profile, "sample": i, "xi": _xi_str(x),
                      "class_count": ec.composition_class_count(d, prof),
                      "re": b.real, "im": b.imag, "abs": abs(b)}, "exact"))
    return rows


def run_deficit(d, n, K, a, surface, target):
    if a is None:
        amin = conc.minimal_deficit(d, n, K, target, surface)
        t = 1.0 / d if target is None else target
        return [({"d": d, "n": n, "K": K, "surface": surface, "target": t,
                  "minimal_a": amin}, "exact")]
    rep = conc.deficit_count(d, n, K, a, surface)
    return [({"d": d, "n": n, "K": K, "a": a, "surface": surface,
              "bad_count": rep.bad_count, "total": rep.total, "fraction": rep.fraction}, "exact")]


def run_few_ones(d, n):
    rep = conc.few_ones_count(d, n)
    return [({"d": d, "n": n, "bad_count": rep.bad_count, "total": rep.total,
              "fraction": rep.fraction, "scaled": rep.fraction * 2.0 ** (n / 2)}, "exact")]


def run_large_coord(d, n, K):
    rep = conc.large_coordinate_count(d, n, K)
    return [({"d": d, "n": n, "K": K, "bad_count": rep.bad_count, "total": rep.total,
              "fraction": rep.fraction, "scaled": rep.fraction * d}, "exact")]


def run_shell_ratio(d, n, C, l):
    q = conc.shell_ratio(d, n, C, l)
    return [({"d": d, "n": n, "C": C, "l": l, "ratio": q, "ratio_float": float(q)}, "exact")]


def run_second_moment(d, n):
    rep = conc.second_moment(d, n)
    return [({"d": d, "n": n, "moment": rep.moment, "moment_float": float(rep.moment),
              "ratio_to_alpha_sq": rep.ratio_to_alpha_sq}, "exact")]


def run_clt_tail(d_star, C, samples, seed):
    t = conc.clt_tail_probability(d_star, C, samples, seed)
    z = (t.estimate - t.gaussian) / t.stderr if t.stderr > 0 else math.nan
    return [({"d_star": d_star, "C": C, "samples": samples, "seed": seed,
              "threshold": t.threshold, "estimate": t.estimate, "stderr": t.stderr,
              "gaussian": t.gaussian, "z": z}, "monte_carlo")]


RUNNERS = {
    "delannoy": run_delannoy, "sphere": run_sphere, "shell": run_shell, "bounded": run_bounded,
    "ehrhart": run_ehrhart, "estimate": run_estimate, "bseries_coeff": run_bseries_coeff,
    "bseries_value": run_bseries_value, "contour": run_contour,
    "saddle-split": run_saddle_split, "average": run_average, "maximal": run_maximal,
    "norm-probe": run_norm_probe, "multiplier": run_multiplier, "mult-scan": run_mult_scan,
    "beta": run_beta, "deficit": run_deficit, "few-ones": run_few_ones,
    "large-coord": run_large_coord, "shell-ratio": run_shell_ratio,
    "second-moment": run_second_moment, "clt-tail": run_clt_tail,
}


def _run_task(payload):
    runner, params, unsafe = payload
    if unsafe:
        with guards.raised():
            return RUNNERS[runner](**params)
    return RUNNERS[runner](**params)


# --- task expansion -------------------------------------------------------


def _product(**ranges):
    keys = list(ranges)
    return [dict(zip(keys, vals)) for vals in itertools.product(*ranges.values())]


def build_tasks(args) -> tuple[str, list[dict]]:
    cmd = args.command
    if cmd in ("delannoy", "sphere", "few-ones", "second-moment"):
        return cmd, [{"d": d, "n": n} for d, n in _dn_pairs(args)]
    if cmd == "shell":
        return cmd, [{"d": d, "s": s, "n": n} for (d, n), s in
                     itertools.product(_dn_pairs(args), parse_int_range(args.s))]
    if cmd == "bounded":
        return cmd, [{"d": d, "n": n, "m": m} for (d, n), m in
                     itertools.product(_dn_pairs(args), parse_int_range(args.m))]
    if cmd == "ehrhart":
        return cmd, _product(d=parse_int_range(args.d))
    if cmd == "estimate":
        return cmd, [{"d": d, "n": n, "which": args.which} for d, n in _dn_pairs(args)]
    if cmd == "bseries":
        if args.alpha is None:
            return "bseries_coeff", _product(k=range(args.order + 1))
        return "bseries_value", _product(alpha=parse_float_list(args.alpha), order=[args.order])
    if cmd == "contour":
        return cmd, [{"d": d, "n": n, "kernel": args.kernel, "radius": args.radius,
                      "nodes": args.nodes} for d, n in _dn_pairs(args)]
    if cmd == "saddle-split":
        return cmd, [{"d": d, "n": n, "delta": delta, "kernel": args.kernel, "nodes": args.nodes}
                     for (d, n), delta in itertools.product(_dn_pairs(args), parse_float_list(args.delta))]
    if cmd == "average":
        return cmd, _product(d=parse_int_range(args.d), R=parse_int_range(args.R),
                             kind=[args.kind], p=parse_float_list(args.p), support=[args.support],
                             mode=[args.mode], seed=[args.seed])
    if cmd == "maximal":
        return cmd, _product(d=parse_int_range(args.d), radii=[args.radii], kind=[args.kind],
                             p=parse_float_list(args.p), support=[args.support],
                             mode=[args.mode], seed=[args.seed])
    if cmd == "norm-probe":
        return cmd, _product(d=parse_int_range(args.d), radii=[args.radii], kind=[args.kind],
                             p=parse_float_list(args.p), trials=[args.trials],
                             support=[args.support], seed=[args.seed], curve=[args.curve])
    if cmd == "multiplier":
        return cmd, [{"d": d, "n": n, "xi": args.xi, "samples": args.samples, "seed": args.seed,
                      "direct": args.direct} for d, n in _dn_pairs(args)]
    if cmd == "mult-scan":
        return cmd, [{"d": d, "n": n, "samples": args.samples, "seed": args.seed}
                     for d, n in _dn_pairs(args)]
    if cmd == "beta":
        return cmd, _product(d=parse_int_range(args.d), profile=[args.profile], xi=[args.xi],
                             samples=[args.samples], seed=[args.seed])
    if cmd == "deficit":
        a_vals = [None] if args.a is None else parse_int_range(args.a)
        return cmd, [{"d": d, "n": n, "K": K, "a": a, "surface": args.surface, "target": args.target}
                     for (d, n), K, a in itertools.product(_dn_pairs(args), parse_int_range(args.K), a_vals)]
    if cmd == "large-coord":
        return cmd, [{"d": d, "n": n, "K": K} for (d, n), K in
                     itertools.product(_dn_pairs(args), parse_int_range(args.K))]
    if cmd == "shell-ratio":
        return cmd, [{"d": d, "n": n, "C": C, "l": l} for (d, n), C, l in itertools.product(
            _dn_pairs(args), parse_float_list(args.C), parse_int_range(args.l))]
    if cmd == "clt-tail":
        return cmd, _product(d_star=parse_int_range(args.d_star), C=parse_float_list(args.C),
                             samples=[args.samples], seed=[args.seed])
    raise UsageError(f"unknown subcommand {cmd!r}")


def run_sweep(runner: str, tasks: list[dict], jobs: int = 1, unsafe: bool = False) -> list[dict]:
    """Evaluate tasks and return finished rows in task order."""
    payloads = [(runner, t, unsafe) for t in tasks]
    if jobs > 1 and len(payloads) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_task, payloads))
    else:
        results = [_run_task(p) for p in payloads]
    rows = []
    for produced in results:
        for row, provenance in produced:
            assert provenance in PROVENANCE
            out = {"subcommand": runner.split("_")[0]}
            out.update(row)
            out["provenance"] = provenance
            out["guards"] = "raised" if unsafe else "default"
            rows.append(out)
    return rows


# --- argument parser ------------------------------------------------------


def _common(p):
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output", "-o", default=None,
                   help=f"output file (default stdout); relative paths resolve under ${OUTPUT_DIR_ENV}")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1, help="worker processes for the sweep")
    p.add_argument("--unsafe-raise-guard", action="store_true",
                   help="disable size guards; rows are tagged guards=raised")


def _dn(p):
    p.add_argument("--d", required=True, help="dimension range")
    p.add_argument("--n", default=None, help="budget range")
    p.add_argument("--n-of-d", choices=N_OF_D, default=None, help="n = floor(scale * f(d))")
    p.add_argument("--scale", default="1", help="scale for --n-of-d (decimal or fraction)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="crosspoly", description="Lattice points in l1 balls: exact counts, "
                     "asymptotics, quadrature, averaging operators and concentration.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_, dn=True):
        p = sub.add_parser(name, help=help_)
        _common(p)
        if dn:
            _dn(p)
        return p

    add("delannoy", "|B_n ∩ Z^d|")
    add("sphere", "|S_n ∩ Z^d|")
    add("shell", "points with exactly s nonzero coordinates").add_argument("--s", required=True)
    add("bounded", "points with max |x_i| <= m").add_argument("--m", required=True)
    p = add("ehrhart", "Ehrhart coefficients of the cross-polytope", dn=False)
    p.add_argument("--d", required=True)
    add("estimate", "asymptotic estimate against the exact count").add_argument(
        "--which", choices=tuple(ESTIMATORS), default="uniform")
    p = add("bseries", "b-series coefficients or values", dn=False)
    p.add_argument("--order", type=int, default=asym.MAX_B_ORDER)
    p.add_argument("--alpha", default=None, help="comma list; omit to list coefficients")
    p = add("contour", "Cauchy-integral quadrature of a count")
    p.add_argument("--kernel", choices=ctr.KERNELS, default="ball")
    p.add_argument("--radius", type=float, default=None)
    p.add_argument("--nodes", type=int, default=512)
    p = add("saddle-split", "near/far arc split at the saddle radius")
    p.add_argument("--delta", default="0.05")
    p.add_argument("--kernel", choices=ctr.KERNELS, default="ball")
    p.add_argument("--nodes", type=int, default=4096)
    for name, help_ in (("average", "single ball/sphere average of a seeded function"),
                        ("maximal", "maximal function of a seeded function")):
        p = add(name, help_, dn=False)
        p.add_argument("--d", required=True)
        if name == "average":
            p.add_argument("--R", required=True)
        else:
            p.add_argument("--radii", required=True, help="range:HI | dyadic:HI[:LO] | interval:LO:HI | list:a,b")
        p.add_argument("--kind", choices=("ball", "sphere"), default="ball")
        p.add_argument("--p", default="2")
        p.add_argument("--support", type=int, default=4)
        p.add_argument("--mode", choices=("same", "full"), default="full")
    p = add("norm-probe", "empirical l^p norm of the maximal function", dn=False)
    p.add_argument("--d", required=True)
    p.add_argument("--radii", required=True)
    p.add_argument("--kind", choices=("ball", "sphere"), default="ball")
    p.add_argument("--p", default="2")
    p.add_argument("--trials", type=int, default=4)
    p.add_argument("--support", type=int, default=None)
    p.add_argument("--curve", action="store_true", help="one row per prefix of the radius set")
    p = add("multiplier", "multiplier symbols m_n, s_n at given or seeded frequencies")
    p.add_argument("--xi", default=None)
    p.add_argument("--samples", type=int, default=1)
    p.add_argument("--direct", action="store_true", help="also evaluate by brute force")
    p = add("mult-scan", "empirical constants of the multiplier bounds")
    p.add_argument("--samples", type=int, default=300)
    p = add("beta", "symbol of a composition class D_j", dn=False)
    p.add_argument("--d", required=True)
    p.add_argument("--profile", required=True, help="j_1,...,j_K")
    p.add_argument("--xi", default=None)
    p.add_argument("--samples", type=int, default=1)
    p = add("deficit", "points whose small part falls short of n by at least a")
    p.add_argument("--K", required=True)
    p.add_argument("--a", default=None, help="omit to report the minimal a")
    p.add_argument("--surface", action="store_true")
    p.add_argument("--target", type=float, default=None)
    add("few-ones", "sphere points with few ±1 coordinates")
    add("large-coord", "ball points with a coordinate >= 6K").add_argument("--K", required=True)
    p = add("shell-ratio", "ratio of consecutive support shells")
    p.add_argument("--C", required=True)
    p.add_argument("--l", required=True)
    add("second-moment", "mean of x_1^2 over the ball")
    p = add("clt-tail", "Monte Carlo tail of a sum of uniforms", dn=False)
    p.add_argument("--d-star", required=True)
    p.add_argument("--C", default="1")
    p.add_argument("--samples", type=int, default=10**6)
    p = add("verify", "run invariant suites and print a pass/fail table", dn=False)
    p.add_argument("--suite", action="append", choices=(*vf.SUITES, "all"), default=None)
    p.add_argument("--max-d", type=int, default=4)
    p.add_argument("--max-n", type=int, default=5)
    return parser


def _verify(args) -> tuple[list[dict], int]:
    checks = vf.run_suites(args.suite or ["all"], args.max_d, args.max_n)
    rows = [{"subcommand": "verify", "suite": c.suite, "check": c.name,
             "status": "PASS" if c.passed else "FAIL", "detail": c.detail,
             "provenance": "exact", "guards": "raised" if args.unsafe_raise_guard else "default"}
            for c in checks]
    return rows, EXIT_OK if all(c.passed for c in checks) else EXIT_VERIFY


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.jobs < 1:
            raise UsageError("--jobs must be >= 1")
        if args.command == "verify":
            if args.unsafe_raise_guard:
                with guards.raised():
                    rows, code = _verify(args)
            else:
                rows, code = _verify(args)
        else:
            runner, tasks = build_tasks(args)
            rows, code = run_sweep(runner, tasks, args.jobs, args.unsafe_raise_guard), EXIT_OK
        write_output(emit(rows, args.format), args.output)
        return code
    except guards.GuardError as exc:
        print(f"crosspoly: {exc} (rerun with --unsafe-raise-guard to lift)", file=sys.stderr)
        return EXIT_GUARD
    except (UsageError, ValueError, OSError) as exc:
        print(f"crosspoly: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
