"""Split the placed translates into subfamilies with prescribed mass fractions."""

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Set, Tuple

import structlog

from folnerkit.core.exceptions import ConfigurationError, InfeasibleToleranceError
from folnerkit.core.numeric import Number, probability_vector, to_fraction
from folnerkit.groups.base import Element
from folnerkit.tiling.family import QuasiTiling

logger = structlog.get_logger()

TranslateKey = Tuple[int, Element]


@dataclass
class SubfamilyPartition:
    """families[i] lists (tile index, centre) pairs; deviations are | |∪F_i|/|A| - a_i |."""

    families: List[List[TranslateKey]]
    fractions: List[Fraction]
    deviations: List[Fraction]
    weights: Tuple[Fraction, ...]

    @property
    def max_deviation(self) -> Fraction:
        return max(self.deviations)


def partition_subfamilies(
    tiling: QuasiTiling, weights: Sequence[Number], tol: Number
) -> SubfamilyPartition:
    """Largest-first assignment of translates to the subfamily with the largest deficit.

    With two or more weights, every translate must fit in the tolerance mass
    tol·|A|.

    Raises:
        InfeasibleToleranceError: a translate exceeds tol·|A|, or some achieved
            deviation is not below `tol`
    """
    if not weights:
        raise ConfigurationError("at least one subfamily weight is required")
    try:
        if len(weights) > 1:
            a = probability_vector(weights)
        else:
            a = tuple(to_fraction(w) for w in weights)
    except ValueError as e:
        raise ConfigurationError(f"invalid subfamily weights: {e}") from e
    if len(a) == 1 and a[0] != 1:
        raise ConfigurationError(f"a single weight must equal 1, got {a[0]}")
    tolerance = to_fraction(tol)
    total = len(tiling.target)

    translates = sorted(
        tiling.translates(), key=lambda item: (-len(item[2]), item[0], item[1])
    )
    largest = max((len(t) for _, _, t in translates), default=0)
    allowed = tolerance * total
    if len(a) > 1 and largest > allowed:
        raise InfeasibleToleranceError(
            f"a translate of {largest} elements exceeds the allowed mass {float(allowed):.4g}"
            f" (tol {float(tolerance):.4g} of |A|={total})",
            stage="partition_subfamilies",
        )

    families: List[List[TranslateKey]] = [[] for _ in a]
    unions: List[Set[Element]] = [set() for _ in a]
    mass = [0] * len(a)
    for i, c, placed in translates:
        deficits = [a_k * total - mass[k] for k, a_k in enumerate(a)]
        target = max(range(len(a)), key=lambda k: (deficits[k], -k))
        families[target].append((i, c))
        unions[target] |= placed.members
        mass[target] += len(placed)

    fractions = [Fraction(len(u), total) for u in unions]
    deviations = [abs(f - a_k) for f, a_k in zip(fractions, a)]
    result = SubfamilyPartition(
        families=families, fractions=fractions, deviations=deviations, weights=a
    )
    if result.max_deviation >= tolerance:
        raise InfeasibleToleranceError(
            f"subfamily deviation {float(result.max_deviation):.4g} "
            f"is not below {float(tolerance):.4g}",
            stage="partition_subfamilies",
        )
    logger.info(
        "Subfamilies partitioned", families=len(a), max_deviation=float(result.max_deviation)
    )
    return result
