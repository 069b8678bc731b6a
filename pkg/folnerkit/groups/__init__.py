"""Concrete amenable group models, finite-subset algebra and Følner sequences."""

from folnerkit.groups.base import Element, GroupModel
from folnerkit.groups.folner import FolnerSequence, folner_sequence
from folnerkit.groups.registry import get_model
from folnerkit.groups.subsets import (
    FiniteSubset,
    InvarianceCheck,
    ball,
    is_invariant,
    k_boundary,
    op_id,
    op_inv,
    op_mul,
    set_inverse,
    set_product,
    symmetric_difference_ratio,
    translate_left,
    translate_right,
)

__all__ = [
    "Element",
    "FiniteSubset",
    "FolnerSequence",
    "GroupModel",
    "InvarianceCheck",
    "ball",
    "folner_sequence",
    "get_model",
    "is_invariant",
    "k_boundary",
    "op_id",
    "op_inv",
    "op_mul",
    "set_inverse",
    "set_product",
    "symmetric_difference_ratio",
    "translate_left",
    "translate_right",
]
