"""Tail probabilities μ(A_Fφ > c) and μ(A_Fφ >= c): exact and Monte Carlo."""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple, Union

import numpy as np
import structlog
from scipy.stats import norm

from folnerkit.core.config import settings
from folnerkit.core.constants import CONFIDENCE_LEVEL
from folnerkit.core.exceptions import ConfigurationError, UnsupportedSystemError
from folnerkit.core.numeric import Number, log_fraction, to_fraction
from folnerkit.groups.subsets import FiniteSubset, set_product
from folnerkit.processors.convolution import exact_sum_distribution, log_class_masses, log_tail
from folnerkit.shift.measures import BernoulliMeasure, sample_patterns
from folnerkit.shift.observables import Observable, birkhoff_sum

logger = structlog.get_logger()

Probability = Union[Fraction, float]

# Samples per independent seed stream
MC_BATCH = 10_000


@dataclass(frozen=True)
class TailProbability:
    """Strict and weak tails; Fractions when computed exactly."""

    strict: Probability
    weak: Probability
    exact: bool
    log_strict: float
    log_weak: float


@dataclass(frozen=True)
class MonteCarloTail:
    samples: int
    hits_strict: int
    hits_weak: int
    strict: float
    weak: float
    interval_strict: Tuple[float, float]
    interval_weak: Tuple[float, float]


def _log(value: Probability) -> float:
    if value == 0:
        return -math.inf
    if isinstance(value, Fraction):
        return log_fraction(value)
    return math.log(value)


def exact_tail(
    mu: BernoulliMeasure, phi: Observable, c: Number, f: FiniteSubset
) -> TailProbability:
    """Law of S_Fφ for an identity-coordinate φ, as a sum of |F| i.i.d. terms.

    Rational convolution up to the exact-sites budget; above it, count
    classes summed in log space.

    Raises:
        UnsupportedSystemError: φ reads more than the identity coordinate
    """
    if not phi.local:
        raise UnsupportedSystemError(
            f"{phi.name} depends on {len(phi.window)} sites; use monte_carlo_tail"
        )
    n = len(f)
    if n == 0:
        raise ConfigurationError("tail over an empty set")
    if n > 10_000:
        raise ConfigurationError(f"|F|={n} is above the exact-tail limit of 10^4")
    values = list(phi.symbol_values())
    values += [Fraction(0)] * (mu.alphabet_size - len(values))
    threshold = to_fraction(c) * n
    if n <= settings.budget.exact_sites:
        dist = exact_sum_distribution(mu.probs, values, n)
        strict = sum((p for s, p in dist.items() if s > threshold), Fraction(0))
        weak = sum((p for s, p in dist.items() if s >= threshold), Fraction(0))
        return TailProbability(
            strict=strict, weak=weak, exact=True, log_strict=_log(strict), log_weak=_log(weak)
        )
    log_mass, sums = log_class_masses([float(p) for p in mu.probs], [float(v) for v in values], n)
    cut = float(threshold)
    log_strict = log_tail(log_mass, sums, cut, strict=True)
    log_weak = log_tail(log_mass, sums, cut, strict=False)
    return TailProbability(
        strict=math.exp(log_strict),
        weak=math.exp(log_weak),
        exact=False,
        log_strict=log_strict,
        log_weak=log_weak,
    )


def wilson_interval(
    hits: int, samples: int, level: float = CONFIDENCE_LEVEL
) -> Tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if samples <= 0:
        raise ConfigurationError("Wilson interval needs at least one sample")
    z = float(norm.ppf(1 - (1 - level) / 2))
    phat = hits / samples
    denom = 1 + z * z / samples
    centre = (phat + z * z / (2 * samples)) / denom
    half = z * math.sqrt(phat * (1 - phat) / samples + z * z / (4 * samples * samples)) / denom
    return max(0.0, centre - half), min(1.0, centre + half)


def _batch_sums(
    mu: BernoulliMeasure,
    phi: Observable,
    f: FiniteSubset,
    count: int,
    seed: np.random.SeedSequence,
) -> np.ndarray:
    if phi.local:
        values = np.array([float(v) for v in phi.symbol_values()], dtype=float)
        values = np.pad(values, (0, max(0, mu.alphabet_size - len(values))))
        rng = np.random.default_rng(seed)
        draws = rng.choice(mu.alphabet_size, size=(count, len(f)), p=mu.floats())
        return values[draws].sum(axis=1)
    support = set_product(phi.window, f)
    patterns = sample_patterns(mu, support, count, seed)
    return np.array([float(birkhoff_sum(phi, x, f)) for x in patterns])


def monte_carlo_tail(
    mu: BernoulliMeasure,
    phi: Observable,
    c: Number,
    f: FiniteSubset,
    samples: int,
    seed: Optional[int],
) -> MonteCarloTail:
    """Frequency estimates of both tails with 95% Wilson intervals.

    Samples are drawn in batches, each from its own spawned seed stream, so
    the estimate does not depend on how batches are scheduled.
    """
    if samples < 1:
        raise ConfigurationError("monte_carlo_tail needs at least one sample")
    if seed is None:
        raise ConfigurationError("monte_carlo_tail needs a seed")
    threshold = float(to_fraction(c) * len(f))
    batches = math.ceil(samples / MC_BATCH)
    streams = np.random.SeedSequence(seed).spawn(batches)
    hits_strict = 0
    hits_weak = 0
    remaining = samples
    for stream in streams:
        size = min(MC_BATCH, remaining)
        remaining -= size
        sums = _batch_sums(mu, phi, f, size, stream)
        hits_strict += int((sums > threshold).sum())
        hits_weak += int((sums >= threshold).sum())
    logger.debug("Monte Carlo tail sampled", samples=samples, hits=hits_strict)
    return MonteCarloTail(
        samples=samples,
        hits_strict=hits_strict,
        hits_weak=hits_weak,
        strict=hits_strict / samples,
        weak=hits_weak / samples,
        interval_strict=wilson_interval(hits_strict, samples),
        interval_weak=wilson_interval(hits_weak, samples),
    )
