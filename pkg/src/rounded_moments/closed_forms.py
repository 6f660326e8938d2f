"""Family-specific exact results for the rounding corrections.

All arguments are in units of the rounding unit ``w``.

* Laplace: hyperbolic closed forms for ``S0``, ``S1``, ``s2`` and the
  window-averaged variance.
* Uniform: Bernoulli-polynomial forms driven by where the support edges fall
  relative to the rounding signposts, and the interference pattern of
  ``<S0**2>`` in the fractional support width ``xi``.
* Normal: the first few terms of the theta-type sums together with
  integral-test bounds on the full sums.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BoundViolation, DomainError
from .series import chi_and_M, normal_truncation
from .special import exp_integral_E1, riemann_zeta

__all__ = [
    "UniformGeometry",
    "laplace_exact",
    "laplace_avg_variance",
    "uniform_geometry",
    "uniform_exact",
    "uniform_avg_S0sq",
    "uniform_chi_averaged",
    "normal_exact",
    "normal_avg_S0sq",
    "normal_I0",
    "normal_I0_bracket",
    "normal_terms",
]

SQRT2 = math.sqrt(2.0)
SQRT3 = math.sqrt(3.0)
XI_SNAP = 1e-12


def _require_positive(sigma):
    if not sigma > 0:
        raise DomainError(f"sigma must be positive, got {sigma}")


# -- Laplace -----------------------------------------------------------------

def _laplace_R_C(sigma, chi):
    # R = sinh(a chi) / (2 sinh(a/2)),  C = cosh(a/2) cosh(a chi) / (2 sinh(a/2)^2)
    # with a = sqrt(2)/sigma, written with non-positive exponents only so the
    # narrow-distribution limit does not overflow.
    a = SQRT2 / sigma
    one_minus_u = -math.expm1(-a)
    one_plus_u = 1.0 + math.exp(-a)
    ep = math.exp(a * (chi - 0.5))
    em = math.exp(-a * (chi + 0.5))
    R = (ep - em) / (2.0 * one_minus_u)
    C = one_plus_u * (ep + em) / (2.0 * one_minus_u ** 2)
    return R, C


def laplace_exact(sigma, chi):
    """Exact ``(S0, S1, s2)`` for the Laplace family at offset ``chi``."""
    _require_positive(sigma)
    R, C = _laplace_R_C(sigma, chi)
    S0 = R - chi
    S1 = sigma * sigma + 1.0 / 12.0 - chi * chi + 2.0 * chi * R - C
    s2 = C - R * R
    return S0, S1, s2


def laplace_avg_variance(sigma):
    """Variance of the rounded Laplace variable averaged over ``chi``.

    Tends to ``sigma**2 + 1/12 - 1/(7560 sigma**4)`` for wide distributions.
    """
    _require_positive(sigma)
    half = 1.0 / (SQRT2 * sigma)
    # [2 + 3 sqrt2 sigma sinh(2 half)] / (16 sinh(half)^2)
    #   = 1 / (8 sinh(half)^2) + (3 sqrt2 sigma / 8) coth(half)
    if half > 350.0:
        inv_sinh2 = 0.0
        coth = 1.0
    else:
        inv_sinh2 = 1.0 / math.sinh(half) ** 2
        coth = 1.0 / math.tanh(half)
    return inv_sinh2 / 8.0 + 3.0 * SQRT2 * sigma / 8.0 * coth


# -- Uniform -----------------------------------------------------------------

@dataclass(frozen=True)
class UniformGeometry:
    """Placement of a uniform support relative to the rounding signposts.

    ``delta_plus`` / ``delta_minus`` are the fractional parts of
    ``mu +/- sqrt(3) sigma - delta + 1/2`` and ``m_plus`` / ``m_minus`` the
    integers the support edges round to.  ``lam`` and ``zeta_u`` are their
    half-sum (minus 1/2) and half-difference; ``xi`` is the fractional part of
    the support width ``2 sqrt(3) sigma``.
    """

    chi: float
    M: int
    delta_plus: float
    delta_minus: float
    m_plus: int
    m_minus: int
    lam: float
    zeta_u: float
    xi: float


def _width_and_xi(sigma):
    width = 2.0 * SQRT3 * sigma
    nearest = round(width)
    if abs(width - nearest) < XI_SNAP:
        return float(nearest), 0.0
    return width, width - math.floor(width)


def uniform_geometry(mu, sigma, delta):
    """Support-edge bookkeeping for the uniform family (units of ``w``)."""
    _require_positive(sigma)
    chi, M = chi_and_M(mu, delta)
    width, xi = _width_and_xi(sigma)
    half = width / 2.0
    up = mu - delta + 0.5 + half
    lo = mu - delta + 0.5 - half
    m_plus = math.floor(up)
    m_minus = math.floor(lo)
    d_plus = up - m_plus
    d_minus = lo - m_minus
    return UniformGeometry(
        chi=chi, M=M,
        delta_plus=d_plus, delta_minus=d_minus,
        m_plus=int(m_plus), m_minus=int(m_minus),
        lam=(d_plus + d_minus - 1.0) / 2.0,
        zeta_u=(d_plus - d_minus) / 2.0,
        xi=xi,
    )


def uniform_exact(geom, sigma):
    """Exact ``(S0, S1, s2)`` for the uniform family from its geometry."""
    _require_positive(sigma)
    lam, z = geom.lam, geom.zeta_u
    r = z / (SQRT3 * sigma)
    S0 = -lam * r
    S1 = lam * lam + z * z - 1.0 / 12.0 - (2.0 * lam * lam + 2.0 * z * z / 3.0 - 1.0 / 6.0) * r
    s2 = sigma * sigma + 1.0 / 12.0 - S1 - S0 * S0
    return S0, S1, s2


def uniform_avg_S0sq(sigma):
    """``<S0**2>`` for the uniform family.

    Returns the exact value ``xi**2 (1 - xi)**2 / (144 sigma**2)``, which
    vanishes whenever the support width is an integer, and its further
    average over ``xi``, ``zeta(4) / (48 pi**4 sigma**2) = 1/(4320 sigma**2)``.
    """
    _require_positive(sigma)
    _, xi = _width_and_xi(sigma)
    exact = xi * xi * (1.0 - xi) ** 2 / (144.0 * sigma * sigma)
    xi_averaged = riemann_zeta(4.0) / (48.0 * sigma * sigma * math.pi ** 4)
    return exact, xi_averaged


def _sym_poly_integral(coeffs, a):
    # int_{-a}^{a} sum_j c_j lam^j dlam
    return sum(2.0 * c * a ** (j + 1) / (j + 1) for j, c in enumerate(coeffs) if j % 2 == 0)


def uniform_chi_averaged(sigma):
    """Average ``S0**2``, ``S0`` and ``S1`` over ``chi`` in closed form.

    As ``chi`` sweeps a unit window at fixed ``sigma``, ``lam`` covers
    ``[(xi-1)/2, (1-xi)/2)`` with ``zeta_u = xi/2`` and ``[-xi/2, xi/2)``
    with ``zeta_u = (xi-1)/2``.  Each quantity is a polynomial in ``lam`` on
    those intervals and is integrated exactly.
    """
    _require_positive(sigma)
    _, xi = _width_and_xi(sigma)
    q = SQRT3 * sigma
    pieces = (((1.0 - xi) / 2.0, xi / 2.0), (xi / 2.0, (xi - 1.0) / 2.0))
    avg_sq = avg_0 = avg_1 = 0.0
    for a, z in pieces:
        r = z / q
        # S0 = -r lam ; S0^2 = r^2 lam^2
        avg_0 += _sym_poly_integral((0.0, -r), a)
        avg_sq += _sym_poly_integral((0.0, 0.0, r * r), a)
        # S1 = (z^2 - 1/12 - (2 z^2/3 - 1/6) r) + (1 - 2 r) lam^2
        c0 = z * z - 1.0 / 12.0 - (2.0 * z * z / 3.0 - 1.0 / 6.0) * r
        avg_1 += _sym_poly_integral((c0, 0.0, 1.0 - 2.0 * r), a)
    return avg_sq, avg_0, avg_1


# -- Normal ------------------------------------------------------------------

def normal_terms(sigma, K=None):
    """Terms used by the normal sums: ``K`` if given, else 5 (more below 0.1)."""
    if K is not None:
        if K < 1:
            raise DomainError(f"K must be >= 1, got {K}")
        return int(K)
    return normal_truncation(sigma) if sigma < 0.1 else 5


def normal_exact(sigma, chi, K=None):
    """Theta-type sums for the normal family and their elementary bounds.

    Returns ``(S0, S1, s2, bound_S0, bound_S1)``.  ``K`` defaults to 5,
    raised for ``sigma < 0.1`` until the summands fall below 1e-18.

    Raises
    ------
    BoundViolation
        If a sum escapes its bound.
    """
    _require_positive(sigma)
    K = normal_terms(sigma, K)
    k = np.arange(1, K + 1, dtype=float)
    sign = np.where(k % 2 == 1, -1.0, 1.0)
    g = np.exp(-2.0 * (math.pi * sigma * k) ** 2)
    S0 = float(np.sum(sign * np.sin(2.0 * math.pi * k * chi) * g / (math.pi * k)))
    S1 = float(np.sum(-sign * np.cos(2.0 * math.pi * k * chi)
                      * (1.0 + (2.0 * math.pi * sigma * k) ** 2) / (math.pi * k) ** 2 * g))
    s2 = sigma * sigma + 1.0 / 12.0 - S1 - S0 * S0
    e = math.exp(-2.0 * (math.pi * sigma) ** 2)
    bound_S0 = (1.0 + 1.0 / (2.0 * math.pi * sigma) ** 2) * e / math.pi
    bound_S1 = ((2.0 * math.pi * sigma) ** 2 + 2.0) * e / math.pi ** 2
    if abs(S0) > bound_S0 or abs(S1) > bound_S1:
        raise BoundViolation(f"normal sums exceed bounds at sigma={sigma}, chi={chi}")
    return S0, S1, s2, bound_S0, bound_S1


def normal_avg_S0sq(sigma, K=None):
    """``<S0**2> = sum exp(-(2 pi sigma k)**2) / (2 (pi k)**2)`` and its bound."""
    _require_positive(sigma)
    K = normal_terms(sigma, K)
    k = np.arange(1, K + 1, dtype=float)
    value = float(np.sum(np.exp(-(2.0 * math.pi * sigma * k) ** 2) / (2.0 * (math.pi * k) ** 2)))
    upper = (0.5 + 1.0 / (4.0 * math.pi * sigma) ** 2) * math.exp(-(2.0 * math.pi * sigma) ** 2) / math.pi ** 2
    if value > upper:
        raise BoundViolation(f"<S0^2> exceeds its bound at sigma={sigma}")
    return value, upper


def normal_I0(sigma, K=None):
    """``sum_k exp(-2 (pi sigma k)**2) / (pi k)``, the majorant of ``|S0|``."""
    _require_positive(sigma)
    K = normal_terms(sigma, K)
    k = np.arange(1, K + 1, dtype=float)
    return float(np.sum(np.exp(-2.0 * (math.pi * sigma * k) ** 2) / (math.pi * k)))


def normal_I0_bracket(sigma):
    """Integral-test bracket ``(lower, upper)`` on :func:`normal_I0`."""
    _require_positive(sigma)
    e1 = exp_integral_E1(2.0 * (math.pi * sigma) ** 2) / (2.0 * math.pi)
    return e1, math.exp(-2.0 * (math.pi * sigma) ** 2) / math.pi + e1
