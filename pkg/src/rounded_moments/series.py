"""Fourier-series corrections to the moments of a rounded variable.

Working in units of the rounding unit ``w``, the reported integer has

    m  = mu - delta + S0
    s2 = sigma**2 + 1/12 - S1 - S0**2

where ``S0`` and ``S1`` are Fourier series in the offset ``chi`` of the mean
from its rounding signpost, with coefficients given by the shifted
characteristic function sampled at ``2 pi k``.  Averaging over ``chi``
removes ``S0`` and ``S1`` but leaves ``<S0**2>``, a positive sum of
``|phi(2 pi k)|**2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .distributions import Family, shifted_char_fn, shifted_char_fn_deriv
from .errors import DomainError, InvalidTruncation
from .rounding import Method, RoundedMoments, round_value
from .special import riemann_zeta

__all__ = [
    "CorrectionTerms",
    "AveragedMoments",
    "chi_and_M",
    "correction_terms",
    "rounded_moments",
    "asymptotic_correction",
    "averaged_moments",
    "aliased_char_fn",
    "normal_truncation",
    "normal_tail_bounds",
]

TERM_TOL = 1e-15
K_MAX = 1_000_000
NORMAL_TERM_TOL = 1e-18
_FIRST_CHUNK = 256

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class CorrectionTerms:
    """``S0`` and ``S1`` at offset ``chi`` (units of ``w``).

    ``tail_S0`` and ``tail_S1`` bound the truncation error of each sum;
    ``tail_bound`` is the larger of the two.
    """

    S0: float
    S1: float
    K: int
    tail_bound: float
    chi: float
    M: int
    tail_S0: float = 0.0
    tail_S1: float = 0.0


@dataclass(frozen=True)
class AveragedMoments:
    """Moments averaged over the position of the mean within a window."""

    avg_m: float
    avg_s2: float
    avg_S0sq: float
    K: int
    tail_bound: float


def chi_and_M(mu, delta):
    """Rounding signpost ``M`` of ``mu`` and offset ``chi = mu - delta - M``.

    ``mu`` is in units of ``w``; ``chi`` lies in ``[-1/2, 1/2)``.
    """
    M = int(math.floor(mu + 0.5 - delta))
    return mu - delta - M, M


def normal_truncation(sigma):
    """Number of terms after which normal-family summands drop below 1e-18.

    Never fewer than five; grows like ``1/sigma`` for narrow distributions.
    """
    if sigma <= 0:
        return K_MAX
    need = math.sqrt(math.log(1.0 / NORMAL_TERM_TOL) / 2.0) / (math.pi * sigma)
    return int(min(K_MAX, max(5, math.ceil(need) + 1)))


def normal_tail_bounds(sigma, K):
    """Integral-test bounds on the parts of the normal ``S0``, ``S1`` sums beyond ``K``."""
    a = 2.0 * (math.pi * sigma) ** 2
    k1 = K + 1.0
    g = math.exp(-a * k1 * k1)
    t0 = g / (math.pi * k1) * (1.0 + 1.0 / (2.0 * a * k1 * k1))
    first1 = (1.0 + (2.0 * math.pi * sigma * k1) ** 2) / (math.pi * k1) ** 2 * g
    integral1 = g / (2.0 * a * k1) * (4.0 * sigma ** 2 + 1.0 / (math.pi * k1) ** 2)
    return t0, first1 + integral1


def _coefficients(spec, k):
    t = TWO_PI * k
    phi = shifted_char_fn(spec, t)
    dphi = shifted_char_fn_deriv(spec, t)
    return np.asarray(phi), np.asarray(dphi), t


def _chunk_terms(spec, k, chi):
    """S0 terms, S1 terms and their chi-free envelope for integer array ``k``."""
    phi, dphi, t = _coefficients(spec, k)
    sign = np.where(k % 2 == 1, -1.0, 1.0)
    pik = math.pi * k
    theta = t * chi
    bracket = dphi - phi / t
    if spec.symmetric:
        s0 = sign * phi * np.sin(theta) / pik
        s1 = 2.0 * sign * bracket * np.cos(theta) / pik
    else:
        # k and -k combined: the pair is real because phi(-t) = conj(phi(t))
        rot = np.exp(1j * theta)
        s0 = sign * np.imag(phi * rot) / pik
        s1 = 2.0 * sign * np.real(bracket * rot) / pik
    env = np.abs(phi) / pik + 2.0 * np.abs(bracket) / pik
    return s0, s1, env


def _sum_adaptive(term_fn, K, tol):
    """Sum ``term_fn(k)`` chunk by chunk.

    ``term_fn`` returns a tuple of term arrays followed by a non-negative
    envelope array.  With ``K`` given, exactly ``K`` terms are summed.
    Otherwise chunks double in size until the last half of a chunk has all
    envelopes below ``tol`` or ``K_MAX`` terms have been used.

    Returns the sums, the number of terms, the envelope of term ``K + 1``
    and whether the cap was hit before convergence.
    """
    start = 1
    size = _FIRST_CHUNK if K is None else K
    limit = K_MAX if K is None else K
    converged = K is not None
    partials = []
    while start <= limit:
        stop = min(start + size, limit + 1)
        k = np.arange(start, stop, dtype=np.int64)
        *terms, env = term_fn(k)
        partials.append([float(np.sum(x)) for x in terms])
        start = stop
        if K is None:
            half = env[len(env) // 2:]
            if np.all(half < tol):
                converged = True
                break
            size *= 2
    totals = [math.fsum(col) for col in zip(*partials)]
    n_terms = start - 1
    *_, env_next = term_fn(np.array([n_terms + 1], dtype=np.int64))
    return totals, n_terms, float(env_next[0]), not converged


def correction_terms(spec, delta, K=None, w=1.0):
    """Evaluate the correction series ``S0`` and ``S1``.

    Parameters
    ----------
    spec : DistributionSpec
        Distribution in physical units; divided by ``w`` internally.
    delta : float
        Rounding offset in ``[-1/2, 1/2]``.
    K : int, optional
        Fixed number of terms.  By default the sum is truncated adaptively
        (term envelope below 1e-15, at most 10**6 terms); normal-family
        sums use :func:`normal_truncation` instead.
    w : float
        Rounding unit.

    Returns
    -------
    CorrectionTerms
    """
    if K is not None and (int(K) != K or K < 1):
        raise InvalidTruncation(f"K must be a positive integer, got {K!r}")
    spec = spec.scaled(w) if w != 1.0 else spec
    chi, M = chi_and_M(spec.mu, delta)
    if spec.sigma == 0.0 and K is None:
        # the series converge (conditionally) to these limits
        return CorrectionTerms(S0=-chi, S1=1.0 / 12.0 - chi * chi, K=0,
                               tail_bound=0.0, chi=chi, M=M)
    is_normal = spec.family is Family.NORMAL
    if K is None and is_normal:
        K = normal_truncation(spec.sigma)
    (S0, S1), n_terms, env_next, capped = _sum_adaptive(
        lambda k: _chunk_terms(spec, k, chi), None if K is None else int(K), TERM_TOL)
    if is_normal and spec.sigma > 0:
        t0, t1 = normal_tail_bounds(spec.sigma, n_terms)
    elif capped:
        # envelope still ~k^-2 at the cap; integral-test style estimate
        t0 = t1 = env_next * (n_terms + 1)
    else:
        t0 = t1 = 2.0 * env_next
    return CorrectionTerms(S0=S0, S1=S1, K=n_terms, tail_bound=max(t0, t1),
                           chi=chi, M=M, tail_S0=t0, tail_S1=t1)


def rounded_moments(spec, r, K=None):
    """Mean and variance of ``n * w`` from the correction series."""
    w = r.w
    if spec.sigma == 0.0:
        M = round_value(spec.mu, r)
        chi = spec.mu / w - r.delta - M
        return RoundedMoments(m=M * w, s2=0.0, method=Method.SERIES, tail_bound=0.0,
                              S0=-chi, S1=1.0 / 12.0 - chi * chi)
    ct = correction_terms(spec, r.delta, K=K, w=w)
    sig = spec.sigma / w
    m = spec.mu - r.delta * w + w * ct.S0
    s2 = (sig * sig + 1.0 / 12.0 - ct.S1 - ct.S0 * ct.S0) * w * w
    tail = (ct.tail_S1 + ct.tail_S0 * (2.0 * abs(ct.S0) + ct.tail_S0)) * w * w
    return RoundedMoments(m=m, s2=max(s2, 0.0), method=Method.SERIES, tail_bound=tail,
                          S0=ct.S0, S1=ct.S1)


def asymptotic_correction(exp, sigma, chi, P, Kinner):
    """Large-``sigma`` approximation of ``(S0, S1)`` from an expansion of ``Phi``.

    Keeps orders ``p = 0..P`` of the expansion; each inner alternating
    ``k``-sum is truncated at ``Kinner`` terms.  ``sigma`` in units of ``w``.
    """
    if not sigma > 0:
        raise DomainError(f"sigma must be positive, got {sigma}")
    if P < 0 or Kinner < 1:
        raise DomainError(f"need P >= 0 and Kinner >= 1, got P={P}, Kinner={Kinner}")
    k = np.arange(1, Kinner + 1, dtype=float)
    sign = np.where(k % 2 == 1, -1.0, 1.0)
    sin_part = sign * np.sin(TWO_PI * k * chi)
    cos_part = -sign * np.cos(TWO_PI * k * chi)
    pik = math.pi * k
    S0 = S1 = 0.0
    for p, c in enumerate(exp.coeffs[:P + 1]):
        order = 2 * p + exp.s
        scale = c / (2.0 * sigma) ** order
        S0 += scale * float(np.sum(sin_part / pik ** (order + 1)))
        S1 += (order + 1) * scale * float(np.sum(cos_part / pik ** (order + 2)))
    return S0, S1


def averaged_moments(spec, r, K=None):
    """Moments averaged over the offset of the mean within its window.

    ``<S0> = <S1> = 0`` so only ``<S0**2> = sum |phi(2 pi k)|**2 / (2 (pi k)**2)``
    survives.
    """
    w = r.w
    sw = spec.scaled(w)
    avg_m = spec.mu - r.delta * w
    if sw.sigma == 0.0 and K is None:
        s0sq = riemann_zeta(2.0) / (2.0 * math.pi ** 2)
        return AveragedMoments(avg_m=avg_m, avg_s2=0.0, avg_S0sq=s0sq, K=0, tail_bound=0.0)
    if K is not None and (int(K) != K or K < 1):
        raise InvalidTruncation(f"K must be a positive integer, got {K!r}")
    is_normal = spec.family is Family.NORMAL
    if K is None and is_normal:
        K = normal_truncation(sw.sigma)

    def terms(k):
        phi = np.asarray(shifted_char_fn(sw, TWO_PI * k))
        val = np.abs(phi) ** 2 / (2.0 * (math.pi * k) ** 2)
        return val, val

    (s0sq,), n_terms, env_next, capped = _sum_adaptive(terms, None if K is None else int(K), TERM_TOL)
    if is_normal and sw.sigma > 0:
        a = (TWO_PI * sw.sigma) ** 2
        k1 = n_terms + 1.0
        tail = math.exp(-a * k1 * k1) / (2.0 * (math.pi * k1) ** 2) * (1.0 + 1.0 / (2.0 * a * k1))
    elif capped:
        tail = env_next * (n_terms + 1)
    else:
        tail = 2.0 * env_next
    sig = sw.sigma
    avg_s2 = (sig * sig + 1.0 / 12.0 - s0sq) * w * w
    return AveragedMoments(avg_m=avg_m, avg_s2=max(avg_s2, 0.0), avg_S0sq=s0sq,
                           K=n_terms, tail_bound=tail * w * w)


def aliased_char_fn(spec, r, t, kmax=10):
    """Characteristic function of the reported integer as an alias sum.

    ``sum_{|k| <= kmax} phi(t + 2 pi k) sinc(t/2 + pi k) exp(i (t + 2 pi k)(mu - delta))``
    with ``mu`` and ``sigma`` in units of ``w``.  Independent of the
    quadrature route in :func:`rounding.rounded_char_fn`.
    """
    sw = spec.scaled(r.w)
    k = np.arange(-kmax, kmax + 1, dtype=float)
    tk = t + TWO_PI * k
    phi = np.asarray(shifted_char_fn(sw, tk), dtype=complex)
    sinc = np.sinc((t / 2.0 + math.pi * k) / math.pi)
    return complex(np.sum(phi * sinc * np.exp(1j * tk * (sw.mu - r.delta))))
