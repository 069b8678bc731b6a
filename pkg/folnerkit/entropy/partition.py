"""Partition entropy H(P_F) and the local exponents of Bowen-ball measures."""

import math
from fractions import Fraction
from typing import Iterable, Sequence

import structlog
from scipy.special import xlogy

from folnerkit.core.config import settings
from folnerkit.core.exceptions import BudgetExceededError, UnsupportedSystemError
from folnerkit.core.numeric import Number, log_fraction, probability_vector
from folnerkit.groups.subsets import FiniteSubset
from folnerkit.processors.convolution import class_table
from folnerkit.shift.measures import BernoulliMeasure, EmpiricalMeasure, MeasureModel
from folnerkit.shift.metric import bowen_window
from folnerkit.shift.patterns import Pattern

logger = structlog.get_logger()


def shannon(masses: Iterable[Fraction]) -> float:
    """-Σ m log m in nats, with 0 log 0 = 0."""
    return float(-sum(xlogy(float(m), float(m)) for m in masses))


def symbol_entropy(probs: Sequence[Number]) -> float:
    """H(p) of a single coordinate."""
    return shannon(probability_vector(probs))


def partition_entropy(mu: MeasureModel, f: FiniteSubset) -> float:
    """H_μ(P_F) over the cylinders of F, natural log.

    Bernoulli measures are summed over symbol-count classes, each class holding
    cylinders of equal mass; empirical measures enumerate observed cylinders.
    """
    limit = settings.budget.max_patterns
    if mu.alphabet_size ** len(f) > limit:
        raise BudgetExceededError(
            f"{mu.alphabet_size}^{len(f)} cylinders exceed the pattern budget {limit}"
        )
    if isinstance(mu, BernoulliMeasure):
        total = 0.0
        for _, multiplicity, prob in class_table(mu.probs, len(f)):
            if prob:
                total -= multiplicity * float(prob) * log_fraction(prob)
        return total
    if isinstance(mu, EmpiricalMeasure):
        counts = mu.restricted_counts(f)
        n = len(mu.samples)
        return shannon(Fraction(k, n) for k in counts.values())
    raise UnsupportedSystemError(f"partition entropy is not available for {mu!r}")


def relative_entropy_product(mu: BernoulliMeasure, nu: Sequence[Number]) -> float:
    """h_μ({F_n}; ν) for product ν against Bernoulli μ: the cross-entropy -Σ ν_a log μ_a."""
    target = probability_vector(nu)
    if len(target) != mu.alphabet_size:
        raise UnsupportedSystemError("ν and μ must share the alphabet")
    total = 0.0
    for v, p in zip(target, mu.probs):
        if v == 0:
            continue
        if p == 0:
            return math.inf
        total -= float(v) * log_fraction(p)
    return total


def local_exponent(mu: MeasureModel, x: Pattern, f: FiniteSubset, epsilon: Number) -> float:
    """-(1/|F|) log μ(B_F(x, ε)), the quantity whose limsup is the entropy at x."""
    window = bowen_window(f, epsilon).window
    mass = mu.cylinder(x.restrict(window))
    if mass == 0:
        return math.inf
    return -log_fraction(mass) / len(f)
