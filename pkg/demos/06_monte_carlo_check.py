"""Checking the predicted moments against simulated, rounded samples."""
import numpy as np

from rounded_moments import DistributionSpec, RoundingSpec, compare, sample_rounded

# Samples come from a counter-based generator in fixed shards, so a seed fixes
# the stream regardless of thread count.
spec = DistributionSpec("laplace", mu=0.8, sigma=1.0)
r = RoundingSpec()
a = sample_rounded(spec, r, 10, seed=42)
b = sample_rounded(spec, r, 10, seed=42)
print("seed 42:", a, "| repeat identical:", np.array_equal(a, b))

# z-scores compare the sample mean and variance of the reported values with
# the series prediction.  The Laplace mean is pulled off mu by S0.
print("\nfamily    sigma  predicted m   sample m     z_mean   predicted s2  sample s2    z_var")
for family, mu, sigma in (("normal", 0.3, 2.0), ("laplace", 0.8, 1.0), ("uniform", 0.1, 1.2), ("laplace", 0.3, 0.4)):
    rep = compare(DistributionSpec(family, mu, sigma), r, 1_000_000, seed=7)
    print(f"{family:8s} {sigma:5.2f}  {rep.predicted.m:.6f}    {rep.sample_m:.6f}   {rep.z_mean:+6.2f}   "
          f"{rep.predicted.s2:.6f}      {rep.sample_s2:.6f}  {rep.z_var:+6.2f}")

# Over many seeds the z-scores behave like standard normals.
z = [compare(spec, r, 200_000, seed=s).z_mean for s in range(30)]
print(f"\n30 seeds: mean z = {np.mean(z):+.2f}, sd z = {np.std(z, ddof=1):.2f}")
