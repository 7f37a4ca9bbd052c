"""Exact lattice-point counts on discrete cross-polytopes.

B_n^d is the closed l1 ball {x in Z^d : |x_1| + ... + |x_d| <= n} and S_n^d
its boundary sphere (norm exactly n). All counts are Python ints, so they
never overflow. ``enumerate_ball`` is the brute-force oracle the rest of the
package is tested against.

Degenerate dimension d = 0 is allowed where it is natural: B_n^0 = {()}.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterator, Sequence

from . import guards
from ._budget import pow_1d

LatticePoint = tuple[int, ...]


def _check_nonneg(**kw):
    for name, v in kw.items():
        if int(v) != v or v < 0:
            raise ValueError(f"{name} must be a nonnegative integer, got {v!r}")


@lru_cache(maxsize=None)
def _delannoy(d: int, n: int) -> int:
    # sum_k 2^k C(d,k) C(n,k), consecutive terms related by an exact ratio
    term = 1
    total = 1
    for k in range(min(d, n)):
        term = term * 2 * (d - k) * (n - k) // ((k + 1) * (k + 1))
        total += term
    return total


def delannoy(d: int, n: int, check: bool = False) -> int:
    """Delannoy number D(d, n) = |B_n^d ∩ Z^d|.

    With ``check=True`` the value is cross-checked against the three-term
    path recurrence (O(d*n) extra work).
    """
    _check_nonneg(d=d, n=n)
    value = _delannoy(int(d), int(n))
    if check:
        other = delannoy_recurrence(d, n)
        if other != value:
            raise AssertionError(f"D({d},{n}): sum {value} != recurrence {other}")
    return value


def delannoy_table(dmax: int, nmax: int) -> list[list[int]]:
    """Table T[d][n] = D(d, n) for 0 <= d <= dmax, 0 <= n <= nmax via the path recurrence."""
    _check_nonneg(dmax=dmax, nmax=nmax)
    prev = [1] * (nmax + 1)
    table = [prev]
    for _ in range(dmax):
        row = [1] * (nmax + 1)
        for n in range(1, nmax + 1):
            row[n] = prev[n] + row[n - 1] + prev[n - 1]
        table.append(row)
        prev = row
    return table


def delannoy_recurrence(d: int, n: int) -> int:
    """D(d, n) from D(d,n) = D(d-1,n) + D(d,n-1) + D(d-1,n-1)."""
    _check_nonneg(d=d, n=n)
    if d < n:
        d, n = n, d
    return delannoy_table(n, d)[n][d]


def sphere_count(d: int, n: int) -> int:
    """|S_n^d ∩ Z^d|, the number of lattice points of l1 norm exactly n."""
    _check_nonneg(d=d, n=n)
    if n == 0:
        return 1
    return delannoy(d, n) - delannoy(d, n - 1)


def support_shell_count(d: int, s: int, n: int) -> int:
    """Points of B_n^d with exactly s nonzero coordinates: 2^s C(d,s) C(n,s)."""
    _check_nonneg(d=d, s=s, n=n)
    if s > d:
        raise ValueError(f"support size s={s} exceeds dimension d={d}")
    return (1 << s) * comb(d, s) * comb(n, s)


def bounded_ball_count(d: int, n: int, m: int) -> int:
    """|{x in B_n^d : max_i |x_i| <= m}| by budget DP over the truncated profile."""
    _check_nonneg(d=d, n=n, m=m)
    top = min(m, n)
    guards.check("dp_budget", max(1, d.bit_length()) * 2 * (n + 1) * (top + 1))
    profile = [1] + [2] * top
    return sum(pow_1d(profile, d, n))


def composition_class_count(d: int, profile: Sequence[int]) -> int:
    """|D_j| for j = profile: points of {-K..K}^d with exactly j_k coordinates equal to ±k."""
    _check_nonneg(d=d)
    for j in profile:
        _check_nonneg(j=j)
    used = sum(profile)
    if used > d:
        raise ValueError(f"profile {tuple(profile)} uses {used} > d={d} coordinates")
    count = factorial(d) // factorial(d - used)
    for j in profile:
        count //= factorial(j)
    return count << used


@dataclass(frozen=True)
class EhrhartPolynomial:
    """i(B_1^d, n) = sum_k coefficients[k] * n^k with exact rational coefficients."""

    dimension: int
    coefficients: tuple[Fraction, ...]

    def __call__(self, n) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * n + c
        return acc

    def evaluate(self, n: int) -> int:
        value = self(n)
        if value.denominator != 1:
            raise ArithmeticError(f"non-integer Ehrhart value {value} at n={n}")
        return value.numerator


def _falling_factorial_poly(k: int) -> list[int]:
    # coefficients of n (n-1) ... (n-k+1) in powers of n
    poly = [1]
    for i in range(k):
        nxt = [0] * (len(poly) + 1)
        for p, c in enumerate(poly):
            nxt[p + 1] += c
            nxt[p] -= i * c
        poly = nxt
    return poly


def ehrhart_polynomial(d: int) -> EhrhartPolynomial:
    """Expand D(d, n) = sum_k 2^k C(d,k) C(n,k) as a polynomial in n."""
    _check_nonneg(d=d)
    if d < 1:
        raise ValueError("dimension must be positive")
    guards.check("ehrhart_dim", d)
    coeffs = [Fraction(0)] * (d + 1)
    for k in range(d + 1):
        scale = Fraction((1 << k) * comb(d, k), factorial(k))
        for p, c in enumerate(_falling_factorial_poly(k)):
            coeffs[p] += scale * c
    return EhrhartPolynomial(d, tuple(coeffs))


def exact_volume(d: int, n: int) -> Fraction:
    """Lebesgue measure of B_n^d, (2n)^d / d!."""
    _check_nonneg(d=d, n=n)
    return Fraction((2 * n) ** d, factorial(d))


def l1_norm(x: Sequence[int]) -> int:
    return sum(abs(v) for v in x)


def _points(d: int, budget: int) -> Iterator[LatticePoint]:
    if d == 0:
        yield ()
        return
    for v in range(-budget, budget + 1):
        for rest in _points(d - 1, budget - abs(v)):
            yield (v,) + rest


def enumerate_ball(d: int, n: int) -> Iterator[LatticePoint]:
    """Yield every point of B_n^d ∩ Z^d once, in lexicographic order."""
    _check_nonneg(d=d, n=n)
    guards.check("enumeration", delannoy(d, n))
    return _points(d, n)


def enumerate_sphere(d: int, n: int) -> Iterator[LatticePoint]:
    """Points of S_n^d ∩ Z^d in lexicographic order (filtered ball enumeration)."""
    return (x for x in enumerate_ball(d, n) if l1_norm(x) == n)
