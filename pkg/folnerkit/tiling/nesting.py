"""Translate tile shapes into a nested chain containing the identity."""

from typing import List

import structlog

from folnerkit.core.exceptions import NestingError
from folnerkit.groups.base import Element
from folnerkit.groups.subsets import (
    FiniteSubset,
    set_inverse,
    set_product,
    translate_left,
    translate_right,
)
from folnerkit.tiling.family import TileFamily

logger = structlog.get_logger()


def _nesting_translate(inner: FiniteSubset, outer: FiniteSubset) -> Element:
    """First g (canonical order) with inner·g ⊆ outer; every such g lies in inner⁻¹·outer."""
    mul = inner.model.mul
    members = outer.members
    for g in set_product(set_inverse(inner), outer):
        if all(mul(a, g) in members for a in inner):
            return g
    raise NestingError(f"no translate of a {len(inner)}-set fits in the {len(outer)}-set")


def nest_translates(tiles: TileFamily) -> TileFamily:
    """F̄_i = F_i g_i g_{i+1} ⋯ g_k with F̄_1 ⊂ ⋯ ⊂ F̄_k and the identity in F̄_1.

    g_i nests F_i into F_{i+1} for i < k; g_k is the first element of
    (g_1 ⋯ g_{k-1})⁻¹ F_1⁻¹.
    """
    shapes = tiles.shapes
    model = shapes[0].model
    translates: List[Element] = []
    for i in range(len(shapes) - 1):
        try:
            translates.append(_nesting_translate(shapes[i], shapes[i + 1]))
        except NestingError as e:
            raise NestingError(f"tile {i + 1}: {e}", stage="nest_translates") from e

    prefix = model.identity()
    for g in translates:
        prefix = model.mul(prefix, g)
    last = translate_left(model.inv(prefix), set_inverse(shapes[0])).elements[0]
    translates.append(last)

    nested: List[FiniteSubset] = []
    for i, shape in enumerate(shapes):
        tail = model.identity()
        for g in translates[i:]:
            tail = model.mul(tail, g)
        nested.append(translate_right(shape, tail))

    if model.identity() not in nested[0]:
        raise NestingError(
            "identity missing from the smallest nested tile", stage="nest_translates"
        )
    for i in range(len(nested) - 1):
        if not nested[i].issubset(nested[i + 1]):
            raise NestingError(f"nested tile {i + 1} escapes tile {i + 2}", stage="nest_translates")
    logger.debug("Tiles nested", k=len(nested), translates=[str(g) for g in translates])
    return TileFamily(
        sequence=tiles.sequence, indices=tiles.indices, explicit=tuple(nested), delta=tiles.delta
    )
