"""Exact, asymptotic and simulated moments of rounded random variables."""

from .distributions import (
    LAPLACE,
    NORMAL,
    UNIFORM,
    AsymptoticExpansion,
    DistributionSpec,
    Family,
    NormalizedForm,
    asymptotic_tail,
    pdf,
    shifted_char_fn,
    shifted_char_fn_deriv,
)
from .errors import (
    BoundViolation,
    CorrectionUnderflow,
    DegenerateDistribution,
    DomainError,
    InvalidSample,
    InvalidTruncation,
    NoSampler,
    NotEnoughData,
    RoundedMomentsError,
    UnsupportedOrder,
)
from .estimator import EstimateReport, Validity, estimate_from_samples, sheppard_correct
from .monte_carlo import McReport, compare, sample_rounded
from .rounding import (
    Method,
    RoundedMoments,
    RoundingSpec,
    discrete_prob,
    oracle_moments,
    round_value,
    rounded_char_fn,
)
from .series import (
    AveragedMoments,
    CorrectionTerms,
    aliased_char_fn,
    asymptotic_correction,
    averaged_moments,
    correction_terms,
    rounded_moments,
)

__version__ = "0.1.0"
