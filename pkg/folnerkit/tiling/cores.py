"""Tile cores: large subsets of each translate whose F-thickenings stay disjoint."""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Tuple

import structlog

from folnerkit.core.exceptions import CertificateError, EmptySetError
from folnerkit.core.numeric import Number, to_fraction
from folnerkit.groups.base import Element
from folnerkit.groups.subsets import FiniteSubset, set_product, translate_right
from folnerkit.tiling.family import QuasiTiling
from folnerkit.tiling.verification import verify_eps_disjoint

logger = structlog.get_logger()

CoreKey = Tuple[Element, int]


@dataclass
class TileCoreSet:
    """Cores T_(c, j) ⊆ F_{n_j}, keyed by (centre, tile index)."""

    cores: Dict[CoreKey, FiniteSubset]
    shapes: Tuple[FiniteSubset, ...]
    separation: FiniteSubset
    threshold: Fraction
    ratios: Dict[CoreKey, Fraction] = field(default_factory=dict)

    def placed(self, key: CoreKey) -> FiniteSubset:
        """T c in the group."""
        c, _ = key
        return translate_right(self.cores[key], c)

    def thickened(self, key: CoreKey) -> FiniteSubset:
        """F T c."""
        return set_product(self.separation, self.placed(key))

    def keys(self) -> List[CoreKey]:
        return sorted(self.cores, key=lambda key: (key[1], key[0]))

    def min_ratio(self) -> Fraction:
        return min(self.ratios.values()) if self.ratios else Fraction(1)


def _pairwise_disjoint(sets: List[FiniteSubset]) -> bool:
    seen: set = set()
    total = 0
    for s in sets:
        seen |= s.members
        total += len(s)
    return len(seen) == total


def extract_cores(
    tiling: QuasiTiling, separation: FiniteSubset, gamma: Number, m_bound: Number, l_count: int
) -> TileCoreSet:
    """Cores T = {t in T̃ : F t ⊆ T̃} inside maximal disjoint representatives T̃.

    The translates must be γ/(M L |F|)-disjoint; every core must keep more
    than 1 - 3γ/(M L) of its tile.

    Args:
        tiling: a certified quasi-tiling
        separation: the specification set F
        gamma: the slack γ
        m_bound: M = max(sup|ψ|, sup|φ|, 1)
        l_count: L, the separated-set count on the Bowen window

    Returns:
        TileCoreSet with per-core ratios |T| / |F_{n_j}|
    """
    if not separation:
        raise EmptySetError("core extraction needs a nonempty separation set F")
    g = to_fraction(gamma)
    m = to_fraction(m_bound)
    disjointness = g / (m * l_count * len(separation))
    threshold = 1 - 3 * g / (m * l_count)
    shapes = tiling.tiles.shapes
    model = tiling.target.model
    mul, inv = model.mul, model.inv

    placed = list(tiling.translates())
    if not placed:
        return TileCoreSet(cores={}, shapes=shapes, separation=separation, threshold=threshold)
    check = verify_eps_disjoint([t for _, _, t in placed], disjointness)
    if not check.feasible or check.representatives is None:
        raise CertificateError(
            f"translates are not {float(disjointness):.4g}-disjoint", stage="extract_cores"
        )

    # grow each witness greedily with sites no other representative uses
    reps = [set(r.members) for r in check.representatives]
    used = set().union(*reps)
    for k, (_, _, translate) in enumerate(placed):
        for site in translate:
            if site not in used:
                reps[k].add(site)
                used.add(site)

    cores: Dict[CoreKey, FiniteSubset] = {}
    ratios: Dict[CoreKey, Fraction] = {}
    for (j, c, _), rep in zip(placed, reps):
        c_inv = inv(c)
        local = {mul(x, c_inv) for x in rep}
        core = [t for t in local if all(mul(f, t) in local for f in separation)]
        key = (c, j)
        cores[key] = FiniteSubset(model, core, check=False)
        ratios[key] = Fraction(len(core), len(shapes[j]))

    result = TileCoreSet(
        cores=cores, shapes=shapes, separation=separation, threshold=threshold, ratios=ratios
    )
    keys = result.keys()
    if not _pairwise_disjoint([result.placed(k) for k in keys]):
        raise CertificateError("placed cores overlap", stage="extract_cores")
    if not _pairwise_disjoint([result.thickened(k) for k in keys]):
        raise CertificateError("thickened cores overlap", stage="extract_cores")
    worst = result.min_ratio()
    if worst <= threshold:
        raise CertificateError(
            f"core ratio {float(worst):.4f} not above {float(threshold):.4f}", stage="extract_cores"
        )
    logger.info("Cores extracted", cores=len(cores), min_ratio=float(worst))
    return result
