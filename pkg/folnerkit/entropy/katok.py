"""Katok covering numbers N(F, ε, δ) and Shannon–McMillan–Breiman traces."""

import math
from fractions import Fraction
from typing import Dict, Iterable, List

import structlog

from folnerkit.core.config import settings
from folnerkit.core.exceptions import (
    BudgetExceededError,
    ConfigurationError,
    FolnerKitError,
    UnsupportedSystemError,
)
from folnerkit.core.numeric import Number, log_fraction, to_fraction
from folnerkit.groups.folner import FolnerSequence
from folnerkit.groups.subsets import FiniteSubset
from folnerkit.models.entropy import CurvePoint, EntropyCurve
from folnerkit.processors.convolution import class_table, composition_count
from folnerkit.shift.measures import BernoulliMeasure, EmpiricalMeasure, MeasureModel
from folnerkit.shift.metric import bowen_window
from folnerkit.shift.patterns import Pattern

logger = structlog.get_logger()


def _ceil_div(a: Fraction, b: Fraction) -> int:
    return -((-a) // b)


def katok_covering_number(mu: MeasureModel, f: FiniteSubset, epsilon: Number, delta: Number) -> int:
    """Fewest Bowen balls B_F(x, ε) covering μ-mass at least 1 - δ.

    Balls are cylinders on the Bowen window and distinct cylinders are
    disjoint, so the optimum takes the heaviest cylinders first.
    """
    d = to_fraction(delta)
    if not 0 <= d < 1:
        raise ConfigurationError(f"delta must lie in [0, 1), got {delta}")
    window = bowen_window(f, epsilon).window
    need = 1 - d
    if isinstance(mu, BernoulliMeasure):
        classes = composition_count(len(window), mu.alphabet_size)
        if classes > settings.budget.max_patterns:
            raise BudgetExceededError(f"{classes} count classes on a {len(window)}-site window")
        covered = Fraction(0)
        count = 0
        for _, multiplicity, prob in class_table(mu.probs, len(window)):
            if covered >= need or prob == 0:
                break
            take = min(multiplicity, _ceil_div(need - covered, prob))
            covered += take * prob
            count += take
        return count
    if isinstance(mu, EmpiricalMeasure):
        limit = settings.budget.max_patterns
        if mu.alphabet_size ** len(window) > limit:
            raise BudgetExceededError(f"{len(window)}-site window exceeds the pattern budget")
        total = len(mu.samples)
        masses = sorted(mu.restricted_counts(window).values(), reverse=True)
        covered_int = 0
        for count, k in enumerate(masses, start=1):
            covered_int += k
            if Fraction(covered_int, total) >= need:
                return count
        return len(masses)
    raise UnsupportedSystemError(f"covering numbers are not available for {mu!r}")


def katok_entropy_curve(
    mu: MeasureModel,
    seq: FolnerSequence,
    epsilon: Number,
    delta: Number,
    n_range: Iterable[int],
) -> EntropyCurve:
    """(1/|F_n|) log N(F_n, ε, δ) for each n; budget failures are skipped and annotated."""
    points: List[CurvePoint] = []
    skipped: Dict[int, str] = {}
    for n in n_range:
        f = seq.get(n)
        try:
            count = katok_covering_number(mu, f, epsilon, delta)
        except BudgetExceededError as e:
            logger.warning("Katok point skipped", n=n, reason=str(e))
            skipped[n] = str(e)
            continue
        points.append(CurvePoint(n=n, size=len(f), value=math.log(count) / len(f)))
    return EntropyCurve.from_points(f"katok eps={epsilon} delta={delta}", points, skipped)


def smb_trace(
    mu: MeasureModel, x: Pattern, seq: FolnerSequence, n_range: Iterable[int]
) -> EntropyCurve:
    """-(1/|F_n|) log μ(P_{F_n}(x)) along the sequence, for one resolved point x."""
    points: List[CurvePoint] = []
    for n in n_range:
        f = seq.get(n)
        mass = mu.cylinder(x.restrict(f))
        if mass == 0:
            raise FolnerKitError(f"x lies in a null cylinder at n={n}", stage="smb_trace")
        points.append(CurvePoint(n=n, size=len(f), value=-log_fraction(mass) / len(f)))
    return EntropyCurve.from_points("smb", points)


def katok_lower_estimate(h: float, eta: float, epsilon: float, delta: float, size: int) -> float:
    """exp(|F|(h - η - ε)) (1 - δ) / 4, the explicit lower estimate for N(F, ε, δ)."""
    return math.exp(size * (h - eta - epsilon)) * (1 - delta) / 4
