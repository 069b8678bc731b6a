"""Greedy ε-quasi-tiling of a finite set."""

from fractions import Fraction
from typing import Dict, List, Optional, Set, Tuple

import structlog

from folnerkit.core.exceptions import CertificateError, ConfigurationError, ModelMismatchError
from folnerkit.core.numeric import Number, to_fraction
from folnerkit.groups.base import Element
from folnerkit.groups.subsets import FiniteSubset, is_invariant, set_inverse, set_product
from folnerkit.tiling.family import QuasiTiling, TileFamily
from folnerkit.tiling.verification import verify_quasi_tiling

logger = structlog.get_logger()


def check_tiling_precondition(
    target: FiniteSubset, tiles: TileFamily, delta: Optional[Number]
) -> Optional[bool]:
    """Whether A is (F̄_kF̄_k⁻¹, δ)-invariant with |F̄_k| / |A| < δ; None without a δ."""
    if delta is None:
        return None
    d = to_fraction(delta)
    largest = tiles.shapes[-1]
    window = set_product(largest, set_inverse(largest))
    invariant = is_invariant(target, window, d).invariant
    small = Fraction(len(largest), len(target)) < d
    if not (invariant and small):
        logger.warning(
            "Quasi-tiling precondition not met; coverage is not guaranteed",
            invariant=invariant,
            size_ratio=float(Fraction(len(largest), len(target))),
            delta=float(d),
        )
    return invariant and small


def _round(
    shape: FiniteSubset, region: Set[Element], eps: Fraction
) -> Tuple[List[Element], Dict[Element, FiniteSubset]]:
    """One round for one shape: disjoint translates first, then ε-disjoint ones."""
    model = shape.model
    mul = model.mul
    candidates = []
    region_set = FiniteSubset(model, region, check=False)
    for c in set_product(set_inverse(shape), region_set):
        placed = {mul(a, c) for a in shape}
        if placed <= region:
            candidates.append((c, placed))

    reserved: Set[Element] = set()
    accepted: Dict[Element, FiniteSubset] = {}
    for c, placed in candidates:
        if reserved.isdisjoint(placed):
            accepted[c] = FiniteSubset(model, placed, check=False)
            reserved |= placed
    need = (1 - eps) * len(shape)
    for c, placed in candidates:
        if c in accepted:
            continue
        rep = placed - reserved
        if len(rep) > need:
            accepted[c] = FiniteSubset(model, rep, check=False)
            reserved |= rep
    centers = sorted(accepted)
    return centers, accepted


def quasi_tile(
    target: FiniteSubset,
    tiles: TileFamily,
    epsilon: Number,
    delta: Optional[Number] = None,
) -> QuasiTiling:
    """Place translates A_i c inside A, largest shape first, and certify the result.

    Each round works inside what earlier rounds left uncovered. Centres are
    scanned in canonical order; a translate is kept if it fits in the
    remaining region and still owns more than (1 - ε)|A_i| unreserved sites.

    Raises:
        CertificateError: containment or disjointness fails independent
            verification (coverage shortfalls are reported, not raised)
    """
    eps = to_fraction(epsilon)
    if not 0 < eps < 1:
        raise ConfigurationError(f"epsilon must lie in (0, 1), got {epsilon}")
    shapes = tiles.shapes
    for shape in shapes:
        if shape.model.name != target.model.name:
            raise ModelMismatchError("tiles and target live on different groups")
    precondition = check_tiling_precondition(
        target, tiles, delta if delta is not None else tiles.delta
    )

    region: Set[Element] = set(target.members)
    centers: List[FiniteSubset] = [FiniteSubset(target.model, [])] * len(shapes)
    reps: Dict[Tuple[int, Element], FiniteSubset] = {}
    for i in reversed(range(len(shapes))):
        chosen, accepted = _round(shapes[i], region, eps)
        centers[i] = FiniteSubset(target.model, chosen, check=False)
        mul = target.model.mul
        for c in chosen:
            reps[(i, c)] = accepted[c]
            region -= {mul(a, c) for a in shapes[i]}
        logger.debug("Tiling round finished", tile=i + 1, centers=len(chosen), left=len(region))

    tiling = QuasiTiling(
        target=target,
        tiles=tiles,
        centers=tuple(centers),
        epsilon=eps,
        representatives=reps,
        precondition_met=precondition,
    )
    certificate = verify_quasi_tiling(tiling)
    tiling.certificate = certificate
    if not (certificate.contained and certificate.eps_disjoint and certificate.blocks_disjoint):
        raise CertificateError(
            "quasi-tiling failed verification: " + "; ".join(certificate.failures),
            stage="quasi_tile",
        )
    if not certificate.covers:
        logger.warning(
            "Quasi-tiling covers less than 1 - ε",
            coverage=certificate.coverage_exact,
            epsilon=str(eps),
        )
    logger.info(
        "Quasi-tiling constructed",
        translates=tiling.placed_count(),
        coverage=certificate.coverage,
        covers=certificate.covers,
    )
    return tiling
