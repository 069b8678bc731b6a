"""Product (Bernoulli) and empirical measures with exact cylinder probabilities."""

from abc import ABC, abstractmethod
from collections import Counter
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
import structlog

from folnerkit.core.exceptions import ConfigurationError, UnsupportedSystemError, WindowError
from folnerkit.core.numeric import Number, probability_vector, to_fraction
from folnerkit.groups.subsets import FiniteSubset
from folnerkit.shift.patterns import Pattern

logger = structlog.get_logger()

SeedLike = Union[int, np.random.SeedSequence, None]


class MeasureModel(ABC):
    """Base class for shift-invariant measures given by cylinder probabilities."""

    kind = ""

    @abstractmethod
    def cylinder(self, pattern: Pattern) -> Fraction:
        """Return the mass of the cylinder fixed by the pattern."""
        pass

    @property
    @abstractmethod
    def alphabet_size(self) -> int:
        pass


class BernoulliMeasure(MeasureModel):
    """The product measure p^G."""

    kind = "bernoulli"

    def __init__(self, probs: Sequence[Number]):
        try:
            self.probs: Tuple[Fraction, ...] = probability_vector(probs)
        except ValueError as e:
            raise ConfigurationError(f"Invalid Bernoulli vector: {e}") from e

    @property
    def alphabet_size(self) -> int:
        return len(self.probs)

    @property
    def full_support(self) -> bool:
        return all(p > 0 for p in self.probs)

    def cylinder(self, pattern: Pattern) -> Fraction:
        result = Fraction(1)
        for s in pattern.symbols:
            if s >= len(self.probs):
                return Fraction(0)
            result *= self.probs[s]
        return result

    def mean(self, values: Sequence[Number]) -> Fraction:
        return sum((p * to_fraction(v) for p, v in zip(self.probs, values)), Fraction(0))

    def floats(self) -> np.ndarray:
        return np.array([float(p) for p in self.probs])

    def __repr__(self) -> str:
        return f"BernoulliMeasure({[str(p) for p in self.probs]})"


class EmpiricalMeasure(MeasureModel):
    """Uniform weight on a finite multiset of sampled patterns sharing one window."""

    kind = "empirical"

    def __init__(self, samples: Sequence[Pattern], alphabet_size: Optional[int] = None):
        if not samples:
            raise ConfigurationError("empirical measure needs at least one sample")
        window = samples[0].window
        for x in samples:
            if x.window != window:
                raise WindowError("empirical samples must share one window")
        self.samples: List[Pattern] = list(samples)
        self.window = window
        self._q = alphabet_size or (max(max(x.symbols) for x in samples) + 1)

    @property
    def alphabet_size(self) -> int:
        return max(self._q, 2)

    def restricted_counts(self, window: FiniteSubset) -> Counter:
        """Multiplicity of each cylinder label on `window` among the samples."""
        if not window.members <= self.window.members:
            raise WindowError("window lies outside the sampled window")
        return Counter(x.key(window) for x in self.samples)

    def cylinder(self, pattern: Pattern) -> Fraction:
        counts = self.restricted_counts(pattern.window)
        return Fraction(counts.get(pattern.symbols, 0), len(self.samples))


def _rng(seed: SeedLike) -> np.random.Generator:
    if seed is None:
        raise ConfigurationError("sampling requires a seed")
    return np.random.default_rng(seed)


def sample_symbols(
    mu: MeasureModel, count: int, sites: int, seed: SeedLike
) -> np.ndarray:
    """A (count, sites) array of i.i.d. symbols drawn from a Bernoulli measure."""
    if not isinstance(mu, BernoulliMeasure):
        raise UnsupportedSystemError("sampling is available for Bernoulli measures only")
    rng = _rng(seed)
    return rng.choice(mu.alphabet_size, size=(count, sites), p=mu.floats())


def sample_pattern(mu: MeasureModel, window: FiniteSubset, seed: SeedLike) -> Pattern:
    """One Bernoulli pattern on `window`, deterministic for a fixed seed."""
    row = sample_symbols(mu, 1, len(window), seed)[0]
    return Pattern(window, row.tolist())


def sample_patterns(
    mu: MeasureModel, window: FiniteSubset, count: int, seed: SeedLike
) -> List[Pattern]:
    rows = sample_symbols(mu, count, len(window), seed)
    return [Pattern(window, row.tolist()) for row in rows]
