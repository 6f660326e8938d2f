"""Sheppard-corrected standard deviation from rounded data.

The naive estimate ``sigma = sqrt(s2 - w**2/12)`` ignores the correction
series.  :func:`estimate_from_samples` attaches an estimate of that neglected
remainder for an assumed family and grades the estimate.  The grading
thresholds are engineering choices, not derived quantities, and can be
overridden.

For the uniform family the pointwise remainder does not decay with
``sigma``; it oscillates with the position of the support edges relative to
the grid.  The uniform model therefore describes the remainder averaged over
the position of the mean, which is the relevant quantity when that position
is unknown.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .distributions import Family
from .errors import CorrectionUnderflow, DomainError, NotEnoughData

__all__ = [
    "Validity",
    "EstimateReport",
    "sheppard_correct",
    "remainder_scale",
    "estimate_from_samples",
    "STRONG_THRESHOLD",
    "MARGINAL_THRESHOLD",
]

# relative to the observed variance
STRONG_THRESHOLD = 1e-6
MARGINAL_THRESHOLD = 1e-2


class Validity(str, enum.Enum):
    STRONG = "Strong"
    MARGINAL = "Marginal"
    INVALID = "Invalid"


@dataclass(frozen=True)
class EstimateReport:
    sigma_hat: Optional[float]
    s2_observed: float
    w: float
    validity: Validity
    remainder_scale: float
    n_samples: int = 0
    family: str = Family.NORMAL.value


def sheppard_correct(s2, w):
    """Return ``sqrt(s2 - w**2 / 12)``.

    Raises :class:`CorrectionUnderflow` when ``s2 <= w**2 / 12``.
    """
    if not w > 0:
        raise DomainError(f"rounding unit must be positive, got {w}")
    excess = s2 - w * w / 12.0
    if not excess > 0:
        raise CorrectionUnderflow(f"s2={s2!r} does not exceed the rounding variance w^2/12={w * w / 12.0!r}")
    return math.sqrt(excess)


def remainder_scale(family, sigma, w):
    """Size of ``|s2 - sigma**2 - w**2/12|`` expected for ``family`` at ``sigma``."""
    family = Family(family)
    if family is Family.NORMAL:
        return sigma * sigma * math.exp(-2.0 * (math.pi * sigma / w) ** 2)
    if family is Family.LAPLACE:
        return 7.0 / 480.0 * (w / sigma) ** 2 * w * w
    if family is Family.UNIFORM:
        # peak of the xi-modulation: xi^2 (1-xi)^2 <= 1/16
        return w ** 4 / (144.0 * sigma * sigma) / 16.0
    raise DomainError(f"no remainder model for family {family.value!r}")


def _grade(rem, s2, strong, marginal):
    if rem < strong * s2:
        return Validity.STRONG
    if rem < marginal * s2:
        return Validity.MARGINAL
    return Validity.INVALID


def estimate_from_samples(rounded, r, family=Family.NORMAL, *,
                          strong=STRONG_THRESHOLD, marginal=MARGINAL_THRESHOLD):
    """Estimate ``sigma`` from reported integers ``rounded`` (values ``n * w``).

    Raises
    ------
    NotEnoughData
        Fewer than two samples.
    CorrectionUnderflow
        Observed variance at or below ``w**2/12``; ``exc.report`` holds an
        ``Invalid`` report with ``sigma_hat=None``.
    """
    family = Family(family)
    n = np.asarray(rounded, dtype=np.float64)
    if n.size < 2:
        raise NotEnoughData(f"need at least 2 samples, got {n.size}")
    s2 = float(np.var(n, ddof=1)) * r.w * r.w
    try:
        sigma_hat = sheppard_correct(s2, r.w)
    except CorrectionUnderflow as exc:
        report = EstimateReport(sigma_hat=None, s2_observed=s2, w=r.w,
                                validity=Validity.INVALID, remainder_scale=math.inf,
                                n_samples=int(n.size), family=family.value)
        raise CorrectionUnderflow(str(exc), report=report) from None
    rem = remainder_scale(family, sigma_hat, r.w)
    return EstimateReport(
        sigma_hat=sigma_hat,
        s2_observed=s2,
        w=r.w,
        validity=_grade(rem, s2, strong, marginal),
        remainder_scale=rem,
        n_samples=int(n.size),
        family=family.value,
    )
