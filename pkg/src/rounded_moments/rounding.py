"""The rounding map and brute-force moments of the rounded variable.

A value ``x`` is reported as ``n * w`` with ``n = floor(x / w + 1/2 - delta)``.
The probabilities ``F_n`` of each reported integer are obtained here by
adaptive quadrature of the density over its rounding window, which gives an
oracle that shares nothing with the Fourier-series route in
:mod:`rounded_moments.series`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import integrate

from .distributions import DistributionSpec
from .errors import DegenerateDistribution, DomainError, InvalidSample

__all__ = [
    "RoundingSpec",
    "Method",
    "RoundedMoments",
    "round_value",
    "discrete_prob",
    "window_probabilities",
    "oracle_moments",
    "rounded_char_fn",
]

QUAD_EPSABS = 1e-13
QUAD_EPSREL = 1e-13
DEFAULT_TOL = 1e-12
# consecutive negligible windows required before a side of the sum is closed
TAIL_RUN = 5
MAX_WINDOWS = 2_000_000


@dataclass(frozen=True)
class RoundingSpec:
    """Rounding unit ``w > 0`` and offset ``delta`` in ``[-1/2, 1/2]``.

    ``delta = 0`` rounds to nearest, ``1/2`` to the floor, ``-1/2`` to the
    ceiling.
    """

    w: float = 1.0
    delta: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "w", float(self.w))
        object.__setattr__(self, "delta", float(self.delta))
        if not (self.w > 0 and math.isfinite(self.w)):
            raise DomainError(f"rounding unit w must be positive, got {self.w}")
        if not -0.5 <= self.delta <= 0.5:
            raise DomainError(f"delta must lie in [-1/2, 1/2], got {self.delta}")


class Method(str, enum.Enum):
    SERIES = "series"
    CLOSED_FORM = "closed"
    ORACLE = "oracle"
    MONTE_CARLO = "mc"


@dataclass(frozen=True)
class RoundedMoments:
    """Mean ``m`` and variance ``s2`` of the reported value ``n * w``.

    ``S0`` and ``S1`` are the dimensionless correction terms when the method
    provides them; ``tail_bound`` estimates the neglected remainder.
    """

    m: float
    s2: float
    method: Method
    tail_bound: float = 0.0
    S0: Optional[float] = None
    S1: Optional[float] = None


def round_value(x, r):
    """Reported integer ``floor(x / w + 1/2 - delta)``; accepts arrays.

    Ties go up for ``delta = 0`` (``2.5 -> 3``).
    """
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise InvalidSample("cannot round non-finite values")
    n = np.floor(arr / r.w + 0.5 - r.delta).astype(np.int64)
    return int(n) if n.ndim == 0 else n


def _window_integral(spec, lo, hi):
    form = spec.form
    slo, shi = (spec.mu + spec.sigma * form.support[0], spec.mu + spec.sigma * form.support[1])
    lo, hi = max(lo, slo), min(hi, shi)
    if not hi > lo:
        return 0.0
    cuts = [lo]
    for b in form.breakpoints:
        xb = spec.mu + spec.sigma * b
        if lo < xb < hi:
            cuts.append(xb)
    cuts.append(hi)
    mu, sigma, F = spec.mu, spec.sigma, form.F

    def density(x):
        return float(F((x - mu) / sigma)) / sigma

    total = 0.0
    for a, b in zip(cuts[:-1], cuts[1:]):
        val, _ = integrate.quad(density, a, b, epsabs=QUAD_EPSABS, epsrel=QUAD_EPSREL, limit=200)
        total += val
    return total


def discrete_prob(spec, r, n):
    """Probability that the reported integer equals ``n``."""
    if spec.sigma == 0.0:
        raise DegenerateDistribution("F_n of a point mass: all mass sits in the window containing mu")
    lo = (n + r.delta - 0.5) * r.w
    hi = (n + r.delta + 0.5) * r.w
    return min(max(_window_integral(spec, lo, hi), 0.0), 1.0)


def window_probabilities(spec, r, tol=DEFAULT_TOL):
    """Enumerate ``(n, F_n)`` outward from the window containing ``mu``.

    Each side stops after ``TAIL_RUN`` consecutive windows where both ``F_n``
    and ``(n - M)**2 F_n`` are below ``tol / 10``.

    Returns
    -------
    M : int
        Integer to which ``mu`` rounds.
    n : ndarray of int
    probs : ndarray of float
    """
    if not tol > 0:
        raise DomainError(f"tol must be positive, got {tol}")
    M = round_value(spec.mu, r)
    if spec.sigma == 0.0:
        return M, np.array([M]), np.array([1.0])
    ns = [M]
    ps = [discrete_prob(spec, r, M)]
    thresh = tol / 10.0
    for direction in (1, -1):
        run = 0
        j = 0
        while run < TAIL_RUN:
            j += 1
            if j > MAX_WINDOWS:
                raise DomainError("probability tail did not fall below tolerance; variance may be infinite")
            p = discrete_prob(spec, r, M + direction * j)
            ns.append(M + direction * j)
            ps.append(p)
            if p < thresh and j * j * p < thresh:
                run += 1
            else:
                run = 0
    order = np.argsort(ns)
    return M, np.asarray(ns)[order], np.asarray(ps)[order]


def oracle_moments(spec, r, tol=DEFAULT_TOL):
    """Mean and variance of ``n * w`` by direct summation over ``F_n``.

    Sums are taken about ``M`` (the integer ``mu`` rounds to) to avoid
    cancellation.
    """
    M, n, p = window_probabilities(spec, r, tol)
    if spec.sigma == 0.0:
        return RoundedMoments(m=M * r.w, s2=0.0, method=Method.ORACLE, tail_bound=0.0)
    j = (n - M).astype(float)
    d = math.fsum(j * p)
    second = math.fsum(j * j * p)
    var = second - d * d
    return RoundedMoments(
        m=(M + d) * r.w,
        s2=max(var, 0.0) * r.w ** 2,
        method=Method.ORACLE,
        tail_bound=tol * r.w ** 2,
    )


def rounded_char_fn(spec, r, t, tol=DEFAULT_TOL):
    """Characteristic function ``sum_n exp(i t n) F_n`` of the reported integer."""
    M, n, p = window_probabilities(spec, r, tol)
    phase = np.exp(1j * t * n.astype(float))
    return complex(np.sum(phase * p))
