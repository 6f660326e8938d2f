"""Location-scale distribution families and their characteristic functions.

Every family is described by a normalized density ``F(u)`` with zero mean and
unit variance; a member with mean ``mu`` and standard deviation ``sigma`` has
density ``F((x - mu) / sigma) / sigma`` and shifted characteristic function
``Phi(sigma * t)``.  Specs always carry the standard deviation, never a scale
parameter: the Laplace scale is ``sigma / sqrt(2)`` and the uniform half-width
is ``sqrt(3) * sigma``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import DegenerateDistribution, DomainError

__all__ = [
    "Family",
    "NormalizedForm",
    "AsymptoticExpansion",
    "DistributionSpec",
    "NORMAL",
    "LAPLACE",
    "UNIFORM",
    "LAPLACE_EXPANSION",
    "pdf",
    "shifted_char_fn",
    "shifted_char_fn_deriv",
    "asymptotic_tail",
]

SQRT2 = math.sqrt(2.0)
SQRT3 = math.sqrt(3.0)


class Family(str, enum.Enum):
    NORMAL = "normal"
    LAPLACE = "laplace"
    UNIFORM = "uniform"
    CUSTOM = "custom"


@dataclass(frozen=True)
class AsymptoticExpansion:
    """Large-argument expansion ``Phi(tau) ~ |tau|^-s * sum_p c_p tau^(-2p)``."""

    s: float
    coeffs: tuple

    def __post_init__(self):
        if not self.s > 0:
            raise DomainError(f"decay exponent s must be positive, got {self.s}")
        if len(self.coeffs) == 0:
            raise DomainError("expansion needs at least one coefficient")
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))


@dataclass(frozen=True)
class NormalizedForm:
    """Zero-mean, unit-variance density with its characteristic function.

    Parameters
    ----------
    F : callable
        Normalized density ``F(u)``; must accept numpy arrays.
    Phi : callable
        Characteristic function ``Phi(tau) = int exp(i u tau) F(u) du``.
        May return complex values; must accept numpy arrays.
    PhiDeriv : callable
        ``dPhi/dtau``.
    symmetric : bool
        ``F`` even, hence ``Phi`` real and even.
    breakpoints : sequence of float
        Points in ``u`` where ``F`` is not smooth (kinks, support edges).
        Quadrature splits there.
    support : (float, float)
        Interval outside which ``F`` vanishes.
    sampler : callable, optional
        ``sampler(uniforms_a, uniforms_b) -> standardized variates`` mapping
        two arrays of independent U(0, 1) draws to ``F``-distributed values.
    expansion : AsymptoticExpansion, optional
    """

    F: Callable
    Phi: Callable
    PhiDeriv: Callable
    symmetric: bool
    breakpoints: Sequence[float] = ()
    support: tuple = (-math.inf, math.inf)
    sampler: Optional[Callable] = None
    expansion: Optional[AsymptoticExpansion] = None
    name: str = "custom"


def _normal_F(u):
    return np.exp(-0.5 * np.square(u)) / math.sqrt(2.0 * math.pi)


def _normal_Phi(tau):
    return np.exp(-0.5 * np.square(tau))


def _normal_dPhi(tau):
    return -tau * np.exp(-0.5 * np.square(tau))


def _normal_sampler(ua, ub):
    # Box-Muller on pairs; only the cosine branch is used so that each
    # output depends on exactly one (ua, ub) pair.
    r = np.sqrt(-2.0 * np.log1p(-ua))
    return r * np.cos(2.0 * math.pi * ub)


def _laplace_F(u):
    return np.exp(-SQRT2 * np.abs(u)) / SQRT2


def _laplace_Phi(tau):
    return 1.0 / (1.0 + 0.5 * np.square(tau))


def _laplace_dPhi(tau):
    return -tau / np.square(1.0 + 0.5 * np.square(tau))


def _laplace_sampler(ua, ub):
    # inverse CDF; ub is unused
    v = ua - 0.5
    return -np.sign(v) * np.log1p(-2.0 * np.abs(v)) / SQRT2


def _uniform_F(u):
    return np.where(np.abs(u) <= SQRT3, 1.0 / (2.0 * SQRT3), 0.0)


def _uniform_Phi(tau):
    return np.sinc(SQRT3 * np.asarray(tau) / math.pi)


def _uniform_dPhi(tau):
    x = SQRT3 * np.asarray(tau, dtype=float)
    small = np.abs(x) < 1e-4
    xs = np.where(small, 1.0, x)
    big = (np.cos(xs) - np.sin(xs) / xs) / xs
    series = -x / 3.0 + x ** 3 / 30.0
    return SQRT3 * np.where(small, series, big)


def _uniform_sampler(ua, ub):
    return SQRT3 * (2.0 * ua - 1.0)


LAPLACE_EXPANSION = AsymptoticExpansion(s=2.0, coeffs=(2.0, -4.0, 8.0, -16.0, 32.0, -64.0))

NORMAL = NormalizedForm(_normal_F, _normal_Phi, _normal_dPhi, symmetric=True,
                        sampler=_normal_sampler, name="normal")
LAPLACE = NormalizedForm(_laplace_F, _laplace_Phi, _laplace_dPhi, symmetric=True,
                         breakpoints=(0.0,), sampler=_laplace_sampler,
                         expansion=LAPLACE_EXPANSION, name="laplace")
UNIFORM = NormalizedForm(_uniform_F, _uniform_Phi, _uniform_dPhi, symmetric=True,
                         breakpoints=(-SQRT3, SQRT3), support=(-SQRT3, SQRT3),
                         sampler=_uniform_sampler, name="uniform")

_BUILTIN = {Family.NORMAL: NORMAL, Family.LAPLACE: LAPLACE, Family.UNIFORM: UNIFORM}


@dataclass(frozen=True)
class DistributionSpec:
    """A family member with mean ``mu`` and standard deviation ``sigma``.

    ``sigma = 0`` is a point mass at ``mu``.  For ``Family.CUSTOM`` the
    normalized form must be passed as ``form``.
    """

    family: Family
    mu: float = 0.0
    sigma: float = 1.0
    form: Optional[NormalizedForm] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        object.__setattr__(self, "mu", float(self.mu))
        object.__setattr__(self, "sigma", float(self.sigma))
        if not math.isfinite(self.mu):
            raise DomainError(f"mu must be finite, got {self.mu}")
        if not (self.sigma >= 0.0 and math.isfinite(self.sigma)):
            raise DomainError(f"sigma must be finite and >= 0, got {self.sigma}")
        if self.family is Family.CUSTOM:
            if self.form is None:
                raise DomainError("custom family requires a NormalizedForm")
        elif self.form is None:
            object.__setattr__(self, "form", _BUILTIN[self.family])

    @property
    def symmetric(self):
        return self.form.symmetric

    def scaled(self, w):
        """Same distribution measured in units of ``w``."""
        return DistributionSpec(self.family, self.mu / w, self.sigma / w, self.form)

    def with_params(self, mu=None, sigma=None):
        return DistributionSpec(self.family,
                                self.mu if mu is None else mu,
                                self.sigma if sigma is None else sigma,
                                self.form)


def pdf(spec, x):
    """Density of ``spec`` at ``x`` (scalar or array)."""
    if spec.sigma == 0.0:
        raise DegenerateDistribution("pdf is undefined for sigma = 0")
    u = (np.asarray(x, dtype=float) - spec.mu) / spec.sigma
    out = spec.form.F(u) / spec.sigma
    return float(out) if np.ndim(out) == 0 else out


def _finish(value, symmetric):
    value = np.asarray(value)
    if symmetric:
        value = value.real
    return value.item() if value.ndim == 0 else value


def shifted_char_fn(spec, t):
    """``E[exp(i t (X - mu))] = Phi(sigma t)``.

    Real for symmetric families.
    """
    if spec.sigma == 0.0:
        return _finish(np.ones_like(np.asarray(t, dtype=float)), True)
    return _finish(spec.form.Phi(spec.sigma * np.asarray(t, dtype=float)), spec.symmetric)


def shifted_char_fn_deriv(spec, t):
    """Derivative of :func:`shifted_char_fn` in ``t``, i.e. ``sigma Phi'(sigma t)``."""
    if spec.sigma == 0.0:
        return _finish(np.zeros_like(np.asarray(t, dtype=float)), True)
    tau = spec.sigma * np.asarray(t, dtype=float)
    return _finish(spec.sigma * spec.form.PhiDeriv(tau), spec.symmetric)


def asymptotic_tail(exp, tau):
    """Evaluate the stored large-``tau`` expansion at ``tau`` (partial sum)."""
    tau = float(tau)
    if tau == 0.0:
        raise DomainError("asymptotic expansion is undefined at tau = 0")
    inv2 = 1.0 / (tau * tau)
    total = 0.0
    for c in reversed(exp.coeffs):
        total = total * inv2 + c
    return abs(tau) ** -exp.s * total
