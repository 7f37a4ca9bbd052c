import math

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, strategies as st

from crosspoly import asymptotics as asym
from crosspoly import bands
from crosspoly.exact_counts import delannoy


def sympy_b_coefficients(order):
    a = sp.symbols("a", positive=True)
    r = (sp.sqrt(1 + a**2) - 1) / a
    g = (sp.log(1 + r) - sp.log(1 - r)) / a - sp.log(2 * r / a)
    ser = sp.series(g, a, 0, 2 * order + 2).removeO()
    return [sp.Rational(ser.coeff(a, 2 * k)) if k else sp.Rational(ser.subs(a, 0)) for k in range(order + 1)]


def test_b_coefficients_against_series_expansion():
    exact = sympy_b_coefficients(6)
    assert exact[:3] == [1, sp.Rational(1, 12), sp.Rational(-3, 160)]
    got = asym.b_coefficients(6)
    for e, g in zip(exact, got):
        assert abs(float(e) - g) < 1e-12


def test_published_values():
    b = asym.b_coefficients(2)
    assert b[0] == pytest.approx(1, abs=1e-8)
    assert b[1] == pytest.approx(0.08333333, abs=1e-8)
    assert b[2] == pytest.approx(-0.01875, abs=1e-8)
    assert asym.b_series(0.0) == 0.0


@given(st.floats(-0.5, 0.5))
def test_b_series_even(alpha):
    assert asym.b_series(alpha) == pytest.approx(asym.b_series(-alpha), abs=1e-15)


@given(st.floats(1e-3, 0.5))
def test_b_series_matches_closed_form(alpha):
    r = asym.saddle_radius(alpha)
    g = (math.log1p(r) - math.log1p(-r)) / alpha - math.log(2 * r / alpha)
    assert asym.b_series(alpha) == pytest.approx(g - 1, abs=1e-9)


def test_saddle_examples():
    assert asym.saddle_radius(1.0) == pytest.approx(math.sqrt(2) - 1, abs=1e-15)
    assert asym.saddle_params(2, 1).r == pytest.approx(0.2360679775, abs=1e-10)
    assert 400 <= asym.saddle_params(100, 1).beta <= 900
    log_est = asym.uniform_estimate(1, 1).log_estimate
    assert log_est == pytest.approx(2 * math.log(1 + math.sqrt(2)), abs=1e-12)


@given(st.floats(1e-6, 1.0), st.floats(1e-6, 1.0))
def test_saddle_radius_monotone(a, b):
    lo, hi = sorted((a, b))
    assert asym.saddle_radius(lo) <= asym.saddle_radius(hi)


@given(st.floats(1e-8, 1.0))
def test_saddle_radius_solves_stationarity(alpha):
    r = asym.saddle_radius(alpha)
    # r h'(r)/h(r) = 2r/(1-r^2) must equal alpha
    assert 2 * r / (1 - r * r) == pytest.approx(alpha, rel=1e-12)


@given(st.integers(1, 400), st.integers(1, 400))
def test_explicit_form_agrees(d, n):
    if n > d:
        d, n = n, d
    assert asym.uniform_estimate_explicit(d, n) == pytest.approx(
        asym.uniform_estimate(d, n).log_estimate, rel=1e-12, abs=1e-10)


def test_uniform_rejects_large_n():
    with pytest.raises(ValueError, match="swap|D\\(d, n\\) = D\\(n, d\\)"):
        asym.uniform_estimate(3, 5)


def test_known_ratio_d50_n10():
    ratio = delannoy(50, 10) / asym.uniform_estimate(50, 10).estimate
    assert 0.1 <= ratio <= 10
    lo, hi = bands.UNIFORM_BAND
    assert lo <= ratio <= hi


def test_binomial_form():
    assert asym.binomial_form_estimate(30, 0).log_estimate == 0.0
    ratio = delannoy(100, 10) / asym.binomial_form_estimate(100, 10).estimate
    assert ratio == pytest.approx(1, abs=0.05)
    with pytest.raises(ValueError):
        asym.binomial_form_estimate(10, 6)


def test_binomial_regime_agreement():
    C = bands.BINOMIAL_REGIME_C
    for d in range(2, 501, 7):
        for n in range(1, d // 2 + 1, 3):
            a = n / d
            diff = abs(asym.uniform_estimate(d, n).log_estimate - asym.binomial_form_estimate(d, n).log_estimate)
            assert diff <= 1 + C * n * a**3


def test_volume_regime_agreement():
    C = bands.VOLUME_REGIME_C
    for d in range(1, 60, 3):
        for n in range(2 * d, 8 * d + 1, max(d // 2, 1)):
            a = n / d
            diff = abs(asym.uniform_estimate(n, d).log_estimate - asym.volume_form_estimate(d, n).log_estimate)
            assert diff <= 1 + C * d / a**3


def test_volume_form_and_exact_volume():
    assert asym.log_exact_volume(2, 3) == pytest.approx(math.log(18))
    ratios = [delannoy(d, d * d) / math.exp(asym.log_exact_volume(d, d * d)) for d in range(1, 13)]
    assert ratios == sorted(ratios, reverse=True)
    assert all(r >= 1 for r in ratios)
    with pytest.raises(ValueError):
        asym.volume_form_estimate(5, 9)


def test_pemantle_wilson_constant_ratio_on_diagonal():
    ds = np.arange(20, 401, 20)
    logs = [asym.pemantle_wilson_estimate(d, d).log_estimate - asym.uniform_estimate(d, d).log_estimate
            for d in ds]
    slope = np.polyfit(np.log(ds), logs, 1)[0]
    assert abs(slope) < 1e-3
    assert delannoy(20, 20) / asym.pemantle_wilson_estimate(20, 20).estimate == pytest.approx(1, abs=0.02)


def test_estimates_stay_finite_in_log():
    rep = asym.uniform_estimate(5000, 2500)
    assert math.isfinite(rep.log_estimate)
    assert rep.estimate == math.inf


def test_binomial_leading_term_d400():
    lo, hi = bands.BINOMIAL_D400_BAND
    for n in range(1, 21):
        assert lo <= delannoy(400, n) / (2**n * math.comb(400, n)) <= hi
