"""Distributions of i.i.d. sums: exact rational convolution and log-space multinomials."""

import math
from fractions import Fraction
from typing import Dict, Iterator, List, Sequence, Tuple

import numpy as np
import structlog
from scipy.special import gammaln, logsumexp

from folnerkit.core.config import settings
from folnerkit.core.exceptions import BudgetExceededError

logger = structlog.get_logger()


def compositions(n: int, parts: int) -> Iterator[Tuple[int, ...]]:
    """All (n_1, ..., n_parts) of nonnegative integers summing to n."""
    if parts == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in compositions(n - first, parts - 1):
            yield (first,) + rest


def composition_count(n: int, parts: int) -> int:
    return math.comb(n + parts - 1, parts - 1)


def multinomial(counts: Sequence[int]) -> int:
    result = 1
    total = 0
    for k in counts:
        total += k
        result *= math.comb(total, k)
    return result


def exact_sum_distribution(
    probs: Sequence[Fraction], values: Sequence[Fraction], n: int
) -> Dict[Fraction, Fraction]:
    """Law of v_{X_1} + ... + v_{X_n} for i.i.d. X_i ~ p, by repeated convolution."""
    step = {}
    for p, v in zip(probs, values):
        if p:
            step[v] = step.get(v, Fraction(0)) + p
    dist: Dict[Fraction, Fraction] = {Fraction(0): Fraction(1)}
    for _ in range(n):
        nxt: Dict[Fraction, Fraction] = {}
        for s, ps in dist.items():
            for v, pv in step.items():
                key = s + v
                nxt[key] = nxt.get(key, Fraction(0)) + ps * pv
        dist = nxt
    return dist


def log_class_masses(
    probs: Sequence[float], values: Sequence[float], n: int
) -> Tuple[np.ndarray, np.ndarray]:
    """Per count class: log probability mass and the attained sum, for symbols of positive mass."""
    support = [a for a, p in enumerate(probs) if p > 0]
    classes = composition_count(n, len(support))
    limit = settings.budget.max_patterns
    if classes > limit:
        raise BudgetExceededError(f"{classes} count classes for n={n} (budget {limit})")
    counts = np.array(list(compositions(n, len(support))), dtype=float)
    log_p = np.log(np.array([probs[a] for a in support], dtype=float))
    vals = np.array([values[a] for a in support], dtype=float)
    log_mass = gammaln(n + 1) - gammaln(counts + 1).sum(axis=1) + counts @ log_p
    return log_mass, counts @ vals


def log_tail(log_mass: np.ndarray, sums: np.ndarray, threshold: float, strict: bool) -> float:
    """log P(S > threshold) or log P(S >= threshold); -inf for an empty event."""
    mask = sums > threshold if strict else sums >= threshold
    if not mask.any():
        return -math.inf
    return float(logsumexp(log_mass[mask]))


def class_table(
    probs: Sequence[Fraction], n: int
) -> List[Tuple[Tuple[int, ...], int, Fraction]]:
    """(counts, multiplicity, cylinder probability) per count class, most likely first."""
    q = len(probs)
    rows = []
    for counts in compositions(n, q):
        prob = Fraction(1)
        for p, k in zip(probs, counts):
            prob *= p**k
        rows.append((counts, multinomial(counts), prob))
    rows.sort(key=lambda row: (-row[2], row[0]))
    return rows
