"""Empirical constants recorded from oracle runs (``scripts/record_bands.py``).

The asymptotic statements these bound are only "up to universal constants";
the numbers below are what the exact computations produced on the stated
grids, rounded outward. Re-running the script must reproduce values inside
these bands.
"""

# D(d, n) / uniform_estimate(d, n) over 1 <= n <= d <= 300.
# Observed [0.36849, 0.57246]; the d <= 500 grid gives [0.36825, 0.57255].
UNIFORM_BAND = (0.36, 0.58)
UNIFORM_BAND_GRID = 300
UNIFORM_BAND_REFINED_GRID = 500

# D(n, n) sqrt(n) / (1 + sqrt 2)^(2n) for 10 <= n <= 200: observed [0.5660, 0.5724].
CENTRAL_BAND = (0.56, 0.58)

# |log uniform - log binomial_form| <= 1 + C n alpha^3 for n <= d/2, d <= 500.
# Fitted C = 0.0993.
BINOMIAL_REGIME_C = 0.11

# |log uniform(n, d) - log volume_form(d, n)| <= 1 + C d / alpha^3 for n >= 2d.
# On d <= 250, n <= 500 the difference never exceeds 1 (sup -> 1 from below as
# d = 1, n -> inf), so the fit is C = 0; a small margin absorbs rounding.
VOLUME_REGIME_C = 0.01

# D(400, n) / (2^n C(400, n)) for 1 <= n <= 20: observed [1.00125, 1.66820].
BINOMIAL_D400_BAND = (1.0, 1.7)

# Local multiplier scan |m_n - 1| / (alpha ||xi||)^2, n = 8d, d in {4, 16, 64}:
# observed 2.206, 3.385, 3.841. The scan maximum equals 2 * E[x_1^2] / alpha^2,
# which stays below 2 * 2 (continuous isotropic limit 2 d^2 / ((d+1)(d+2)) < 2).
MULTIPLIER_LOCAL_CONSTANT = 4.0

# few_ones fraction * 2^(n/2) on d = 818 n, 1 <= n <= 24: observed max 0.00733.
FEW_ONES_CONSTANT = 0.01

# large_coordinate fraction * d for K in {1, 2}, d in {100, 400, 1600, 6400},
# 10K <= n <= d^(K/(K+1)): observed max 4.47e-5.
LARGE_COORDINATE_CONSTANT = 1e-4

# E[x_1^2] / alpha^2 over n in {20d, 40d, 80d}, 1 <= d <= 30: observed
# [0.3375, 1.8186] (d = 1 gives (n+1)/(3n) exactly). Width 5.39.
SECOND_MOMENT_BAND = (0.33, 1.83)

# Norm-probe ratios, p = 2, E = {0, ..., R}, R <= 10, d <= 4: observed max 1.2037 (d = 1).
NORM_PROBE_CAP = 1.25
