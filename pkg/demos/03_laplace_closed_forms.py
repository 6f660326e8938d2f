"""Laplace family: hyperbolic closed forms and the slow power-law remainder."""
from rounded_moments import DistributionSpec, RoundingSpec, averaged_moments
from rounded_moments.closed_forms import laplace_avg_variance, laplace_exact
from rounded_moments.distributions import LAPLACE_EXPANSION
from rounded_moments.series import asymptotic_correction

# The Laplace characteristic function decays only like tau^-2, so the
# remainder s2 - sigma^2 - 1/12 falls off as a power of sigma.
print("pointwise remainder at chi = 0 against -(7/480)/sigma^2")
for sigma in (1.0, 2.0, 5.0, 10.0):
    s2 = laplace_exact(sigma, 0.0)[2]
    print(f"sigma={sigma:5.1f}  remainder={s2 - sigma ** 2 - 1 / 12:+.4e}  leading={-7 / 480 / sigma ** 2:+.4e}")

# Averaged over the position of the mean the O(sigma^-2) part cancels and the
# remainder drops to -1/(7560 sigma^4): doubling sigma divides it by 16.
print("\nchi-averaged remainder against -1/(7560 sigma^4)")
prev = None
for sigma in (2.0, 4.0, 8.0):
    rem = laplace_avg_variance(sigma) - sigma ** 2 - 1 / 12
    ratio = "" if prev is None else f"ratio {prev / rem:.2f}"
    print(f"sigma={sigma:4.1f}  {rem:+.4e}  {-1 / (7560 * sigma ** 4):+.4e}  {ratio}")
    prev = rem

am = averaged_moments(DistributionSpec("laplace", 0.0, 0.5), RoundingSpec())
print(f"\nsigma=0.5: closed form {laplace_avg_variance(0.5):.15f}, series {am.avg_s2:.15f}")

# The large-sigma expansion of Phi gives S0 order by order.
sigma, chi = 3.0, 0.3
exact = laplace_exact(sigma, chi)[0]
print(f"\nS0 at sigma={sigma}, chi={chi}: exact {exact:+.10e}")
for P in range(4):
    approx = asymptotic_correction(LAPLACE_EXPANSION, sigma, chi, P, 5000)[0]
    print(f"  orders 0..{P}: {approx:+.10e}  error {abs(approx - exact):.1e}")
