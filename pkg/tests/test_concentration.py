import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from crosspoly import concentration as conc
from crosspoly.exact_counts import delannoy, enumerate_ball, l1_norm, sphere_count, support_shell_count


def small_part(x, K):
    return sum(abs(v) for v in x if abs(v) <= K)


@pytest.mark.parametrize("d", range(1, 6))
@pytest.mark.parametrize("n", range(0, 8))
def test_dp_counters_match_enumeration(d, n):
    pts = list(enumerate_ball(d, n))
    sphere = [x for x in pts if l1_norm(x) == n]
    for K in range(0, 3):
        for a in range(0, min(3, n) + 1):
            assert conc.deficit_count(d, n, K, a).bad_count == sum(small_part(x, K) <= n - a for x in pts)
            assert conc.deficit_count(d, n, K, a, surface=True).bad_count == sum(
                small_part(x, K) <= n - a for x in sphere)
    assert conc.few_ones_count(d, n).bad_count == sum(
        sum(abs(v) == 1 for v in x) <= n / 2 for x in sphere)
    for K in (1, 2):
        assert conc.large_coordinate_count(d, n, K).bad_count == sum(
            max(map(abs, x), default=0) >= 6 * K for x in pts)


def test_examples():
    assert conc.few_ones_count(2, 2).bad_count == 4
    assert conc.few_ones_count(5, 0).bad_count == 1
    assert conc.large_coordinate_count(2, 2, 1).bad_count == 0
    assert conc.large_coordinate_count(2, 2, 1 / 3).bad_count == 13 - 9
    rep = conc.large_coordinate_count(20, 10, 1)
    assert 0 < rep.fraction < 1  # n = 10 lies outside the n <= d^(1/2) sweep
    assert conc.second_moment(2, 1).moment == Fraction(2, 5)
    for n in range(1, 20):
        assert conc.second_moment(1, n).moment == Fraction(n * (n + 1), 3)
    rep = conc.deficit_count(4, 6, 1, 0)
    assert rep.bad_count == rep.total == delannoy(4, 6)
    for a in range(0, 5):
        assert conc.deficit_count(4, 5, 5, a).bad_count == delannoy(4, 5 - a)


@given(st.integers(1, 12), st.integers(1, 12), st.integers(0, 3))
@settings(max_examples=40)
def test_deficit_monotone(d, n, K):
    counts = [conc.deficit_count(d, n, K, a).bad_count for a in range(n + 1)]
    assert counts == sorted(counts, reverse=True)
    for a in range(n + 1):
        assert conc.deficit_count(d, n + 1, K, a).bad_count >= counts[a]


def test_deficit_validation():
    with pytest.raises(ValueError):
        conc.deficit_count(3, 2, 1, 3)
    with pytest.raises(ValueError):
        conc.deficit_count(3, 2, -1, 0)


def test_minimal_deficit_stabilises():
    K, eps = 2, 0.5
    found = []
    for d in (16, 64, 256):
        n = math.floor(d ** ((K - eps) / (K + 1)))
        found.append(conc.minimal_deficit(d, n, K))
    assert found[2] <= found[1]


@given(st.integers(20, 200), st.integers(1, 3), st.integers(0, 30))
@settings(max_examples=40)
def test_shell_ratio_identity(d, l, extra):
    lstar = math.floor(math.sqrt(d)) + l
    n = d - lstar + extra
    q = conc.shell_ratio(d, n, 1.0, l)
    assert q == Fraction(support_shell_count(d, d - lstar - 1, n), support_shell_count(d, d - lstar, n))


def test_shell_ratio_rejects_degenerate():
    d = 50
    lstar = math.floor(math.sqrt(d)) + 1
    with pytest.raises(ValueError):
        conc.shell_ratio(d, d - lstar - 1, 1.0, 1)


@given(st.integers(1, 30), st.integers(1, 200))
@settings(max_examples=50)
def test_second_moment_matches_slices(d, n):
    # x_1^2 never exceeds n^2, and d = 1 has a closed form
    rep = conc.second_moment(d, n)
    assert 0 < rep.moment <= n * n
    if d == 1:
        assert rep.moment == Fraction(n * (n + 1), 3)


def test_second_moment_against_enumeration():
    for d in range(1, 5):
        for n in range(0, 7):
            pts = list(enumerate_ball(d, n))
            assert conc.second_moment(d, n).moment == Fraction(sum(x[0] ** 2 for x in pts), len(pts))


def test_clt_tail_reproducible():
    a = conc.clt_tail_probability(20, 1.0, samples=40_000, seed=5)
    b = conc.clt_tail_probability(20, 1.0, samples=40_000, seed=5, chunk=777)
    assert a == b
    assert a.threshold == -math.floor(math.sqrt(40)) - 1


def test_clt_tail_zero_c():
    t = conc.clt_tail_probability(200, 0.0, samples=50_000, seed=1)
    assert t.threshold == -1
    assert 0.3 < t.gaussian < 0.5
    assert abs(t.estimate - t.gaussian) < 4 * t.stderr


def test_report_invariant():
    with pytest.raises(AssertionError):
        conc.ConcentrationReport(1, 1, 5, 3)


def test_second_moment_follows_continuous_profile():
    # E[x_1^2] / alpha^2 tracks 2 d^2 / ((d+1)(d+2)) for n >> d, so the band
    # over 2 <= d <= 30 is about 2.7 wide while d = 1 alone sits at 1/3
    vals = {}
    for d in range(1, 31):
        v = conc.second_moment(d, 80 * d).ratio_to_alpha_sq
        assert v == pytest.approx(2 * d * d / ((d + 1) * (d + 2)), rel=0.05)
        vals[d] = v
    rest = [vals[d] for d in range(2, 31)]
    assert max(rest) / min(rest) <= 4
    assert max(vals.values()) / min(vals.values()) > 4
