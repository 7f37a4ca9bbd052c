"""Truncated polynomial powers for the l1-budget dynamic programs.

All budget DPs in the package process d identical coordinates, each
contributing a fixed generating polynomial in the budget variable (and
possibly a second, saturating statistic). Raising that polynomial to the
d-th power with truncation is the coordinate-by-coordinate convolution,
grouped by repeated squaring.
"""
from __future__ import annotations

import numpy as np


def mul_1d(a: list[int], b: list[int], n: int) -> list[int]:
    out = [0] * (n + 1)
    for i, ai in enumerate(a[: n + 1]):
        if ai:
            for j, bj in enumerate(b[: n + 1 - i]):
                if bj:
                    out[i + j] += ai * bj
    return out


def pow_1d(p: list[int], d: int, n: int) -> list[int]:
    """Coefficients 0..n of p(z)**d, exact integers."""
    result = [1] + [0] * n
    base = list(p[: n + 1]) + [0] * (n + 1 - len(p[: n + 1]))
    while d:
        if d & 1:
            result = mul_1d(result, base, n)
        d >>= 1
        if d:
            base = mul_1d(base, base, n)
    return result


def mul_2d(a: np.ndarray, b: np.ndarray, n: int, cap: int) -> np.ndarray:
    """Product truncated at budget n; the second index saturates at cap."""
    out = np.zeros((n + 1, cap + 1), dtype=object)
    out[:] = 0
    for t1, j1 in zip(*np.nonzero(a)):
        coef = a[t1, j1]
        rows = n + 1 - t1
        blk = b[:rows]
        out[t1:, j1:] += coef * blk[:, : cap + 1 - j1]
        if j1:
            out[t1:, cap] += coef * blk[:, cap + 1 - j1:].sum(axis=1)
    return out


def pow_2d(p: np.ndarray, d: int, n: int, cap: int) -> np.ndarray:
    result = np.zeros((n + 1, cap + 1), dtype=object)
    result[:] = 0
    result[0, 0] = 1
    base = p
    while d:
        if d & 1:
            result = mul_2d(result, base, n, cap)
        d >>= 1
        if d:
            base = mul_2d(base, base, n, cap)
    return result


def zeros_2d(n: int, cap: int) -> np.ndarray:
    z = np.zeros((n + 1, cap + 1), dtype=object)
    z[:] = 0
    return z
