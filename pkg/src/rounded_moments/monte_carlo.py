"""Seeded Monte Carlo check of the predicted rounded moments.

Streams are built from the Philox4x64 counter-based generator.  Samples are
produced in fixed-size shards; shard ``i`` of a run with seed ``s`` uses the
generator seeded by ``SeedSequence([s, i])``, so the stream depends only on
``(seed, n)`` and never on how many workers draw it.  Per-shard central
moment accumulators are merged pairwise in shard order.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NoSampler
from .rounding import RoundedMoments, round_value
from .series import rounded_moments

__all__ = ["McReport", "sample_rounded", "iter_rounded", "compare", "Moments"]

SHARD_SIZE = 1 << 16
THREADS_ENV = "ROUNDED_MOMENTS_THREADS"


def _max_workers():
    cap = os.environ.get(THREADS_ENV)
    n = os.cpu_count() or 1
    if cap:
        try:
            n = min(n, max(1, int(cap)))
        except ValueError:
            pass
    return n


def _open_uniforms(bitgen, size):
    # 53-bit uniforms on the open interval (0, 1)
    raw = bitgen.random_raw(size)
    return ((raw >> np.uint64(11)).astype(np.float64) + 0.5) * 2.0 ** -53


def _shard(spec, r, seed, index, size):
    bitgen = np.random.Philox(np.random.SeedSequence([int(seed), int(index)]))
    if spec.sigma == 0.0:
        x = np.full(size, spec.mu)
    else:
        ua = _open_uniforms(bitgen, size)
        ub = _open_uniforms(bitgen, size)
        x = spec.mu + spec.sigma * spec.form.sampler(ua, ub)
    return round_value(x, r)


def _check(spec, n):
    if n < 1:
        raise DomainError(f"need at least one sample, got n={n}")
    if spec.form.sampler is None:
        raise NoSampler(f"family {spec.family.value!r} has no sampler")


def iter_rounded(spec, r, n, seed):
    """Yield the rounded integers shard by shard (int64 arrays)."""
    _check(spec, n)
    for i, start in enumerate(range(0, n, SHARD_SIZE)):
        yield _shard(spec, r, seed, i, min(SHARD_SIZE, n - start))


def sample_rounded(spec, r, n, seed):
    """``n`` reproducible draws from ``spec``, rounded; returns int64 array."""
    return np.concatenate(list(iter_rounded(spec, r, n, seed)))


@dataclass(frozen=True)
class Moments:
    """Count, mean and central sums ``M2..M4`` of a batch; mergeable."""

    n: int
    mean: float
    M2: float
    M3: float
    M4: float

    @classmethod
    def of(cls, values):
        v = np.asarray(values, dtype=np.float64)
        mean = float(np.mean(v))
        d = v - mean
        d2 = d * d
        return cls(v.size, mean, float(np.sum(d2)), float(np.sum(d2 * d)), float(np.sum(d2 * d2)))

    def merge(self, other):
        na, nb = self.n, other.n
        n = na + nb
        delta = other.mean - self.mean
        d_n = delta / n
        mean = self.mean + nb * d_n
        M2 = self.M2 + other.M2 + delta * d_n * na * nb
        M3 = (self.M3 + other.M3 + delta * d_n * d_n * na * nb * (na - nb)
              + 3.0 * d_n * (na * other.M2 - nb * self.M2))
        M4 = (self.M4 + other.M4
              + delta * d_n ** 3 * na * nb * (na * na - na * nb + nb * nb)
              + 6.0 * d_n * d_n * (na * na * other.M2 + nb * nb * self.M2)
              + 4.0 * d_n * (na * other.M3 - nb * self.M3))
        return Moments(n, mean, M2, M3, M4)


def _pairwise(items):
    while len(items) > 1:
        nxt = [a.merge(b) for a, b in zip(items[0::2], items[1::2])]
        if len(items) % 2:
            nxt.append(items[-1])
        items = nxt
    return items[0]


@dataclass(frozen=True)
class McReport:
    n_samples: int
    sample_m: float
    sample_s2: float
    predicted: RoundedMoments
    z_mean: float
    z_var: float
    seed: int


def _z(dev, se):
    if se == 0.0:
        return 0.0 if dev == 0.0 else math.copysign(math.inf, dev)
    return dev / se


def compare(spec, r, n, seed, predicted=None):
    """Sample, round and compare sample moments with the series prediction.

    z-scores use the standard error of the mean and, for the unbiased sample
    variance, the plug-in fourth central moment.
    """
    if n < 100:
        raise DomainError(f"compare needs n >= 100, got {n}")
    _check(spec, n)
    if predicted is None:
        predicted = rounded_moments(spec, r)
    starts = list(range(0, n, SHARD_SIZE))

    def work(i):
        return Moments.of(_shard(spec, r, seed, i, min(SHARD_SIZE, n - starts[i])))

    with ThreadPoolExecutor(max_workers=_max_workers()) as pool:
        parts = list(pool.map(work, range(len(starts))))
    acc = _pairwise(parts)
    w = r.w
    sample_m = acc.mean * w
    var_idx = acc.M2 / (n - 1)
    sample_s2 = var_idx * w * w
    m2 = acc.M2 / n
    m4 = acc.M4 / n
    se_mean = math.sqrt(var_idx / n) * w
    var_of_var = max((m4 - (n - 3.0) / (n - 1.0) * m2 * m2) / n, 0.0)
    se_var = math.sqrt(var_of_var) * w * w
    return McReport(
        n_samples=n,
        sample_m=sample_m,
        sample_s2=sample_s2,
        predicted=predicted,
        z_mean=_z(sample_m - predicted.m, se_mean),
        z_var=_z(sample_s2 - predicted.s2, se_var),
        seed=int(seed),
    )
