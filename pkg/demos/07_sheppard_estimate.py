"""Recovering sigma from rounded data and judging whether that is safe."""
from rounded_moments import (
    CorrectionUnderflow,
    DistributionSpec,
    RoundingSpec,
    estimate_from_samples,
    sample_rounded,
)

# sigma_hat = sqrt(s2 - w^2/12).  The report attaches the size of the
# neglected remainder for an assumed family and grades the estimate.
r = RoundingSpec(w=1.0)
print("family   true sigma  sigma_hat  validity   remainder scale")
for family, sigma in (("normal", 2.0), ("normal", 0.6), ("normal", 0.35), ("laplace", 3.0), ("laplace", 0.5),
                      ("uniform", 1.7)):
    data = sample_rounded(DistributionSpec(family, 0.37, sigma), r, 500_000, seed=11)
    rep = estimate_from_samples(data, r, family=family)
    print(f"{family:8s} {sigma:6.2f}      {rep.sigma_hat:.4f}     {rep.validity.value:9s}  {rep.remainder_scale:.2e}")

# When the spread is below the rounding noise there is nothing to correct.
try:
    estimate_from_samples([5, 5, 5, 5], r)
except CorrectionUnderflow as exc:
    print("\nno estimate:", exc)
    print("report:", exc.report)
