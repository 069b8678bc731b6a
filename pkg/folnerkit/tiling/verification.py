"""Independent certificates for ε-disjointness and quasi-tilings."""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence

import structlog

from folnerkit.core.exceptions import EmptySetError
from folnerkit.core.numeric import Number, to_fraction
from folnerkit.groups.subsets import FiniteSubset
from folnerkit.models.tiling import TilingCertificate
from folnerkit.processors.flow import disjoint_representatives
from folnerkit.tiling.family import QuasiTiling

logger = structlog.get_logger()


@dataclass
class EpsDisjointResult:
    """Whether disjoint B_i ⊆ A_i with |B_i| > (1 - ε)|A_i| exist, with witnesses."""

    feasible: bool
    demands: List[int]
    representatives: Optional[List[FiniteSubset]] = field(default=None)

    def __bool__(self) -> bool:
        return self.feasible


def representative_demand(size: int, epsilon: Fraction) -> int:
    """floor((1 - ε)|A|) + 1, the least integer strictly above (1 - ε)|A|."""
    return math.floor((1 - epsilon) * size) + 1


def verify_eps_disjoint(family: Sequence[FiniteSubset], epsilon: Number) -> EpsDisjointResult:
    """Decide ε-disjointness by maximum flow and return witnesses when feasible."""
    if not family:
        raise EmptySetError("ε-disjointness of an empty family")
    eps = to_fraction(epsilon)
    demands = [min(representative_demand(len(a), eps), len(a)) for a in family]
    found = disjoint_representatives([set(a.members) for a in family], demands)
    if found is None:
        return EpsDisjointResult(feasible=False, demands=demands)
    model = family[0].model
    reps = [FiniteSubset(model, chosen, check=False) for chosen in found]
    return EpsDisjointResult(feasible=True, demands=demands, representatives=reps)


def verify_quasi_tiling(tiling: QuasiTiling) -> TilingCertificate:
    """Re-check containment, ε-disjointness, block disjointness and coverage from scratch."""
    target = tiling.target.members
    failures: List[str] = []

    contained = True
    blocks = []
    for i in range(len(tiling.tiles)):
        block = tiling.block(i)
        if not block.members <= target:
            contained = False
            failures.append(f"A_{i + 1}C_{i + 1} leaves the target")
        blocks.append(block)

    eps_disjoint = True
    for i in range(len(tiling.tiles)):
        family = [placed for j, _, placed in tiling.translates() if j == i]
        if family and not verify_eps_disjoint(family, tiling.epsilon):
            eps_disjoint = False
            failures.append(f"translates of tile {i + 1} are not ε-disjoint")

    blocks_disjoint = True
    for i in range(len(blocks)):
        for j in range(i + 1, len(blocks)):
            if not blocks[i].isdisjoint(blocks[j]):
                blocks_disjoint = False
                failures.append(f"blocks {i + 1} and {j + 1} overlap")

    covered_set = set()
    for block in blocks:
        covered_set |= block.members & target
    covered = len(covered_set)
    coverage = Fraction(covered, len(target)) if target else Fraction(0)
    covers = coverage >= 1 - tiling.epsilon
    if not covers:
        failures.append(f"coverage {float(coverage):.4f} below 1 - ε")

    certificate = TilingCertificate(
        contained=contained,
        eps_disjoint=eps_disjoint,
        blocks_disjoint=blocks_disjoint,
        covers=covers,
        coverage=float(coverage),
        coverage_exact=str(coverage),
        covered=covered,
        target_size=len(target),
        failures=failures,
    )
    logger.debug("Quasi-tiling verified", valid=certificate.valid, coverage=float(coverage))
    return certificate
