"""The word-length metric d(x, y) = 2^(-r) and Bowen windows."""

from dataclasses import dataclass
from fractions import Fraction

import structlog

from folnerkit.core.exceptions import ConfigurationError, ModelMismatchError, WindowError
from folnerkit.core.numeric import Number, to_fraction
from folnerkit.groups.subsets import FiniteSubset, ball, set_product
from folnerkit.shift.patterns import Pattern

logger = structlog.get_logger()


@dataclass(frozen=True)
class MetricDistance:
    """d(x, y), or an upper bound 2^(-(radius+1)) when the common window agrees throughout."""

    value: Fraction
    exact: bool
    radius: int

    def __float__(self) -> float:
        return float(self.value)


@dataclass(frozen=True)
class BowenWindow:
    """B_F(x, ε) is the cylinder of x on `window` = B_m·F."""

    base: FiniteSubset
    epsilon: Fraction
    radius: int
    window: FiniteSubset


def bowen_radius(epsilon: Number) -> int:
    """Largest m with 2^(-m) >= ε, i.e. floor(log2(1/ε)), in exact arithmetic."""
    eps = to_fraction(epsilon)
    if not 0 < eps <= 1:
        raise ConfigurationError(f"epsilon must lie in (0, 1], got {epsilon}")
    m = 0
    while Fraction(1, 2 ** (m + 1)) >= eps:
        m += 1
    return m


def bowen_window(f: FiniteSubset, epsilon: Number) -> BowenWindow:
    m = bowen_radius(epsilon)
    window = f if m == 0 else set_product(ball(f.model, m), f)
    return BowenWindow(base=f, epsilon=to_fraction(epsilon), radius=m, window=window)


def metric_dist(x: Pattern, y: Pattern, max_radius: int = 64) -> MetricDistance:
    """Scan word-length spheres outward until a disagreement or the window edge."""
    if x.model.name != y.model.name:
        raise ModelMismatchError(f"patterns over {x.model.name} and {y.model.name}")
    model = x.model
    common = x.window.members & y.window.members
    if model.identity() not in common:
        raise WindowError("patterns must both be defined at the identity")
    for r in range(max_radius + 1):
        shell = model.sphere(r)
        if any(g in common and x[g] != y[g] for g in shell):
            return MetricDistance(value=Fraction(1, 2**r), exact=True, radius=r)
        if not all(g in common for g in shell):
            return MetricDistance(value=Fraction(1, 2**r), exact=False, radius=r - 1)
    return MetricDistance(value=Fraction(1, 2 ** (max_radius + 1)), exact=False, radius=max_radius)
