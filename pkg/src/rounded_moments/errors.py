"""Exception hierarchy shared by all modules."""


class RoundedMomentsError(Exception):
    """Base class for errors raised by this package."""


class DomainError(RoundedMomentsError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class DegenerateDistribution(DomainError):
    """Operation needs a density but the distribution is a point mass."""


class UnsupportedOrder(DomainError):
    pass


class InvalidTruncation(DomainError):
    pass


class InvalidSample(DomainError):
    pass


class NoSampler(RoundedMomentsError):
    """A custom family was used for sampling without providing a sampler."""


class NotEnoughData(RoundedMomentsError, ValueError):
    pass


class BoundViolation(RoundedMomentsError, ArithmeticError):
    """A computed series escaped its analytic bound (indicates a bug)."""


class CorrectionUnderflow(RoundedMomentsError, ArithmeticError):
    """Observed variance does not exceed the rounding noise ``w**2 / 12``.

    ``report`` carries the diagnostic report when raised from
    :func:`rounded_moments.estimator.estimate_from_samples`.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
