"""Rounding a continuous variable and the mass that lands in each window."""
import math

import numpy as np

from rounded_moments import DistributionSpec, RoundingSpec, discrete_prob, oracle_moments, round_value

# A reading x is reported as n * w with n = floor(x / w + 1/2 - delta).
# delta = 0 is round-to-nearest, delta = 1/2 is floor.
nearest = RoundingSpec(w=1.0, delta=0.0)
floor_rule = RoundingSpec(w=1.0, delta=0.5)
x = np.array([-1.2, -0.5, 0.49, 2.5, 7.49])
print("x            ", x)
print("nearest      ", round_value(x, nearest))
print("floor        ", round_value(x, floor_rule))
print("w=2, nearest ", round_value(x, RoundingSpec(w=2.0)), "(reported values are twice these)")

# Probability that a standard normal reading is reported as each integer.
spec = DistributionSpec("normal", mu=0.0, sigma=1.0)
print("\nn   F_n (quadrature)   erf check")
for n in range(-3, 4):
    lo, hi = (n - 0.5) / math.sqrt(2), (n + 0.5) / math.sqrt(2)
    print(f"{n:2d}  {discrete_prob(spec, nearest, n):.12f}     {0.5 * (math.erf(hi) - math.erf(lo)):.12f}")

# The brute-force moments of the reported integer.  With sigma = 1 the
# variance is already sigma^2 + 1/12 to about 1e-8.
rm = oracle_moments(spec, nearest)
print(f"\noracle: m = {rm.m:.3e}, s2 = {rm.s2:.12f}, sigma^2 + 1/12 = {1 + 1 / 12:.12f}")

# A point mass is reported exactly: every sample rounds to the same integer.
print("point mass at 0.25:", oracle_moments(DistributionSpec("laplace", 0.25, 0.0), nearest))
