"""Finite-subset algebra: products, inverses, translates and K-boundaries."""

from dataclasses import dataclass
from fractions import Fraction
from typing import FrozenSet, Iterable, Iterator, Tuple

import structlog

from folnerkit.core.config import settings
from folnerkit.core.exceptions import BudgetExceededError, EmptySetError, ModelMismatchError
from folnerkit.core.numeric import Number, to_fraction
from folnerkit.groups.base import Element, GroupModel

logger = structlog.get_logger()


class FiniteSubset:
    """Duplicate-free finite set of group elements in canonical (sorted) order."""

    __slots__ = ("model", "elements", "_members")

    def __init__(self, model: GroupModel, elements: Iterable[Element], check: bool = True):
        members = frozenset(elements)
        if check:
            for g in members:
                model.check(g)
        self.model = model
        self._members: FrozenSet[Element] = members
        self.elements: Tuple[Element, ...] = tuple(sorted(members))

    @property
    def cardinality(self) -> int:
        return len(self.elements)

    @property
    def members(self) -> FrozenSet[Element]:
        return self._members

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Element]:
        return iter(self.elements)

    def __contains__(self, g: object) -> bool:
        return g in self._members

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteSubset):
            return NotImplemented
        return self.model.name == other.model.name and self._members == other._members

    def __hash__(self) -> int:
        return hash((self.model.name, self._members))

    def __repr__(self) -> str:
        preview = ", ".join(repr(g) for g in self.elements[:4])
        more = ", ..." if len(self.elements) > 4 else ""
        return f"FiniteSubset({self.model.name}, {{{preview}{more}}}, size={len(self)})"

    def _same(self, other: "FiniteSubset") -> None:
        _require_same_model(self.model, other.model)

    def union(self, other: "FiniteSubset") -> "FiniteSubset":
        self._same(other)
        return FiniteSubset(self.model, self._members | other._members, check=False)

    def intersection(self, other: "FiniteSubset") -> "FiniteSubset":
        self._same(other)
        return FiniteSubset(self.model, self._members & other._members, check=False)

    def difference(self, other: "FiniteSubset") -> "FiniteSubset":
        self._same(other)
        return FiniteSubset(self.model, self._members - other._members, check=False)

    def symmetric_difference(self, other: "FiniteSubset") -> "FiniteSubset":
        self._same(other)
        return FiniteSubset(self.model, self._members ^ other._members, check=False)

    def issubset(self, other: "FiniteSubset") -> bool:
        self._same(other)
        return self._members <= other._members

    def isdisjoint(self, other: "FiniteSubset") -> bool:
        self._same(other)
        return self._members.isdisjoint(other._members)


@dataclass(frozen=True)
class InvarianceCheck:
    """Outcome of a (K, δ)-invariance test."""

    invariant: bool
    ratio: Fraction
    boundary_size: int


def _require_same_model(a: GroupModel, b: GroupModel) -> None:
    if a.name != b.name:
        raise ModelMismatchError(f"group models differ: {a.name} vs {b.name}")


def _guard_size(estimate: int, what: str) -> None:
    limit = settings.budget.max_set_size
    if estimate > limit:
        raise BudgetExceededError(f"{what} would touch {estimate} elements (budget {limit})")


def op_mul(model: GroupModel, g: Element, h: Element) -> Element:
    return model.mul(g, h)


def op_inv(model: GroupModel, g: Element) -> Element:
    return model.inv(g)


def op_id(model: GroupModel) -> Element:
    return model.identity()


def singleton(model: GroupModel, g: Element) -> FiniteSubset:
    return FiniteSubset(model, [g])


def ball(model: GroupModel, radius: int) -> FiniteSubset:
    """Word-length ball B_radius around the identity."""
    if radius < 0:
        raise ValueError(f"radius must be nonnegative, got {radius}")
    return FiniteSubset(model, model.ball_elements(radius), check=False)


def set_product(a: FiniteSubset, b: FiniteSubset) -> FiniteSubset:
    """The product set AB = {ab : a in A, b in B}."""
    _require_same_model(a.model, b.model)
    _guard_size(len(a) * len(b), "set product")
    mul = a.model.mul
    return FiniteSubset(a.model, (mul(x, y) for x in a for y in b), check=False)


def set_inverse(a: FiniteSubset) -> FiniteSubset:
    inv = a.model.inv
    return FiniteSubset(a.model, (inv(x) for x in a), check=False)


def translate_left(g: Element, a: FiniteSubset) -> FiniteSubset:
    """gA."""
    a.model.check(g)
    mul = a.model.mul
    return FiniteSubset(a.model, (mul(g, x) for x in a), check=False)


def translate_right(a: FiniteSubset, g: Element) -> FiniteSubset:
    """Ag."""
    a.model.check(g)
    mul = a.model.mul
    return FiniteSubset(a.model, (mul(x, g) for x in a), check=False)


def symmetric_difference_ratio(f: FiniteSubset, g: Element) -> Fraction:
    """|F Δ gF| / |F| as an exact rational."""
    if not f:
        raise EmptySetError("symmetric difference ratio of an empty set")
    moved = translate_left(g, f)
    return Fraction(len(f.members ^ moved.members), len(f))


def k_boundary(a: FiniteSubset, k: FiniteSubset) -> FiniteSubset:
    """B(A, K) = {g : Kg meets both A and its complement}.

    Every such g lies in K⁻¹A, so only those candidates are examined.
    """
    _require_same_model(a.model, k.model)
    if not k:
        raise EmptySetError("K-boundary with empty K")
    model = a.model
    mul = model.mul
    inside = a.members
    candidates = set_product(set_inverse(k), a)
    boundary = []
    for g in candidates:
        hits = 0
        for x in k:
            if mul(x, g) in inside:
                hits += 1
        if 0 < hits < len(k):
            boundary.append(g)
    return FiniteSubset(model, boundary, check=False)


def is_invariant(a: FiniteSubset, k: FiniteSubset, delta: Number) -> InvarianceCheck:
    """(K, δ)-invariance: |B(A, K)| / |A| < δ (strict)."""
    if not a:
        raise EmptySetError("invariance of an empty set")
    size = len(k_boundary(a, k))
    ratio = Fraction(size, len(a))
    return InvarianceCheck(invariant=ratio < to_fraction(delta), ratio=ratio, boundary_size=size)
