"""Normal family: corrections vanish like exp(-2 pi^2 sigma^2)."""
import math

from rounded_moments import DistributionSpec, RoundingSpec, rounded_moments
from rounded_moments.closed_forms import normal_avg_S0sq, normal_exact, normal_I0, normal_I0_bracket

# The Gaussian characteristic function makes the correction sums theta-like:
# the k = 2 term is smaller than the first by exp(-6 pi^2) ~ 2e-26 at sigma = 1.
print("sigma   |S0| bound     |S1| bound     s2 - sigma^2 - 1/12 (chi=0.25)")
for sigma in (0.2, 0.3, 0.5, 0.75, 1.0, 1.5):
    S0, S1, s2, b0, b1 = normal_exact(sigma, 0.25)
    print(f"{sigma:4.2f}   {b0:.3e}     {b1:.3e}     {s2 - sigma ** 2 - 1 / 12:+.3e}")

# Integral-test bracket on the majorant of |S0|.
print("\nsigma   E1 lower       I0            upper")
for sigma in (0.5, 1.0, 2.0):
    lo, hi = normal_I0_bracket(sigma)
    print(f"{sigma:4.1f}   {lo:.4e}   {normal_I0(sigma):.4e}   {hi:.4e}")

value, upper = normal_avg_S0sq(1.0)
print(f"\n<S0^2> at sigma=1: {value:.3e} (bound {upper:.3e})")

# In practice Sheppard's w^2/12 is exact for sigma >~ 1: the rounded variance
# at sigma = 2 equals 4 + 1/12 to every printed digit.
rm = rounded_moments(DistributionSpec("normal", 0.3, 2.0), RoundingSpec())
print(f"sigma=2: s2 = {rm.s2:.17g} (4 + 1/12 = {4 + 1 / 12:.17g}); e^(-8 pi^2) = {math.exp(-8 * math.pi ** 2):.1e}")
