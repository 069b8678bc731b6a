"""Constructive weak specification for full shifts and safe-symbol SFTs."""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

import structlog

from folnerkit.core.exceptions import (
    CertificateError,
    ConfigurationError,
    ThickeningOverlapError,
    UnsupportedSystemError,
)
from folnerkit.core.numeric import Number
from folnerkit.groups.base import Element
from folnerkit.groups.subsets import FiniteSubset, ball, set_product, translate_right
from folnerkit.shift.metric import bowen_window, metric_dist
from folnerkit.shift.patterns import Pattern, shift_pattern
from folnerkit.shift.system import ShiftSystem, is_admissible

logger = structlog.get_logger()


@dataclass
class ShadowResult:
    """The shadowing pattern y and, per piece, the largest d(g·x_i, g·y) over g in F_i."""

    point: Pattern
    max_distance: List[Fraction] = field(default_factory=list)
    epsilon: Fraction = Fraction(1)
    admissible: bool = True

    @property
    def certified(self) -> bool:
        return self.admissible and all(d <= self.epsilon for d in self.max_distance)


def _near(x: Pattern, reach: FiniteSubset, g: Element) -> Pattern:
    """x restricted to the sites of reach·g it is defined on."""
    local = translate_right(reach, g).intersection(x.window)
    return x.restrict(local)


def _fill_symbol(system: ShiftSystem, fill: Optional[int]) -> int:
    if system.forbidden:
        if system.safe_symbol is None:
            raise UnsupportedSystemError("weak specification needs a safe symbol for an SFT")
        return system.safe_symbol
    symbol = 0 if fill is None else fill
    if not 0 <= symbol < system.alphabet_size:
        raise ConfigurationError(f"fill symbol {symbol} outside the alphabet")
    return symbol


def weak_spec_shadow(
    system: ShiftSystem,
    pieces: Sequence[Pattern],
    sets: Sequence[FiniteSubset],
    thickening: FiniteSubset,
    epsilon: Number,
    window: Optional[FiniteSubset] = None,
    fill: Optional[int] = None,
) -> ShadowResult:
    """A point y whose orbit ε-shadows each x_i along F_i.

    Args:
        system: full shift or SFT with a safe symbol
        pieces: x_i, each defined at least on the Bowen window of F_i
        sets: F_i, whose thickenings F·F_i must be pairwise disjoint
        thickening: the specification set F
        epsilon: shadowing radius
        window: extra sites on which y must be defined (filled)
        fill: fill symbol for full shifts (SFTs use the safe symbol)

    Returns:
        ShadowResult with a per-piece metric certificate
    """
    if len(pieces) != len(sets):
        raise ConfigurationError(f"{len(pieces)} pieces for {len(sets)} sets")
    symbol = _fill_symbol(system, fill)
    thick = [set_product(thickening, f) for f in sets]
    for i in range(len(thick)):
        for j in range(i + 1, len(thick)):
            if not thick[i].isdisjoint(thick[j]):
                raise ThickeningOverlapError(f"F·F_{i + 1} meets F·F_{j + 1}")

    values: Dict[Element, int] = {}
    bowen = [bowen_window(f, epsilon) for f in sets]
    for x, bw in zip(pieces, bowen):
        copied = x.restrict(bw.window)
        for g, s in copied.items():
            if values.get(g, s) != s:
                raise ThickeningOverlapError(f"Bowen windows disagree at {g!r}")
            values[g] = s
    if window is not None:
        for g in window:
            values.setdefault(g, symbol)
    y = Pattern.from_mapping(system.model, values)

    result = ShadowResult(point=y, epsilon=bowen[0].epsilon if bowen else Fraction(1))
    for x, f, bw in zip(pieces, sets, bowen):
        worst = Fraction(0)
        reach = ball(system.model, bw.radius + 1)
        for g in f:
            # compare g·x and g·y on B_{m+1}, enough to decide d <= ε
            moved_x = shift_pattern(g, _near(x, reach, g))
            moved_y = shift_pattern(g, _near(y, reach, g))
            dist = metric_dist(moved_x, moved_y, max_radius=bw.radius + 1)
            worst = max(worst, dist.value)
        result.max_distance.append(worst)
    if system.forbidden:
        result.admissible = is_admissible(system, y)
    if not result.certified:
        raise CertificateError("shadow point failed its specification certificate", stage="shadow")
    logger.debug("Shadow constructed", pieces=len(pieces), sites=len(y))
    return result
