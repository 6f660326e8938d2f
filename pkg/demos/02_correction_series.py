"""The correction series S0, S1 and how they depend on where the mean sits."""
import numpy as np

from rounded_moments import DistributionSpec, RoundingSpec, correction_terms, oracle_moments, rounded_moments

# The rounded mean and variance differ from mu - delta and sigma^2 + 1/12 by
#   m  = mu - delta + S0
#   s2 = sigma^2 + 1/12 - S1 - S0^2
# where S0 and S1 are Fourier series in the offset chi of mu from its grid point.
print("Laplace, sigma = 0.7: corrections across one window")
print("  chi       S0            S1          terms   tail bound")
for chi in np.linspace(-0.5, 0.5, 9):
    ct = correction_terms(DistributionSpec("laplace", chi, 0.7), delta=0.0)
    print(f"{ct.chi:+6.3f}  {ct.S0:+.6e}  {ct.S1:+.6e}  {ct.K:6d}   {ct.tail_bound:.1e}")

# S0 is odd in chi and S1 even, so averaging over chi kills both.  The
# series agrees with brute-force summation over windows.
r = RoundingSpec(w=0.5, delta=0.2)
print("\nseries vs oracle, w = 0.5, delta = 0.2")
for family in ("normal", "laplace", "uniform"):
    spec = DistributionSpec(family, mu=1.13, sigma=0.4)
    a, b = rounded_moments(spec, r), oracle_moments(spec, r)
    print(f"{family:8s} m: {a.m:.12f} {b.m:.12f}   s2: {a.s2:.12f} {b.s2:.12f}")

# As sigma shrinks the distribution collapses into one window: S0 -> -chi and
# S1 -> sigma^2 + 1/12 - chi^2, so the rounded variance goes to zero.
print("\nsigma -> 0 at chi = 0.3")
for sigma in (0.3, 0.1, 0.03, 0.01):
    ct = correction_terms(DistributionSpec("normal", 0.3, sigma), 0.0)
    print(f"sigma={sigma:<5} S0={ct.S0:+.6f}  S1={ct.S1:+.6f}  (limits -0.3, {sigma ** 2 + 1 / 12 - 0.09:+.6f})")
