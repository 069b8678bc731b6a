"""Følner sequences: built-in shapes per model and user-supplied set lists."""

import itertools
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence

import structlog

from folnerkit.core.constants import FOLNER_RULES
from folnerkit.core.exceptions import ConfigurationError, EmptySetError, PrefixExhaustedError
from folnerkit.groups.base import GroupModel
from folnerkit.groups.registry import get_model
from folnerkit.groups.subsets import FiniteSubset, k_boundary, set_inverse, set_product

logger = structlog.get_logger()


class FolnerSequence:
    """A rule n -> F_n (n >= 1) over a group model, optionally capped."""

    closed_form = False

    def __init__(
        self,
        model: GroupModel,
        rule: Callable[[int], FiniteSubset],
        name: str,
        cap: Optional[int] = None,
    ):
        self.model = model
        self.rule = rule
        self.name = name
        self.cap = cap
        self._cache: Dict[int, FiniteSubset] = {}

    def _check_index(self, n: int) -> None:
        if n < 1:
            raise PrefixExhaustedError(f"Følner index must be >= 1, got {n}")
        if self.cap is not None and n > self.cap:
            raise PrefixExhaustedError(f"{self.name} is capped at n={self.cap}, asked for {n}")

    def get(self, n: int) -> FiniteSubset:
        self._check_index(n)
        if n not in self._cache:
            shape = self.rule(n)
            if not shape:
                raise EmptySetError(f"{self.name} produced an empty set at n={n}")
            self._cache[n] = shape
        return self._cache[n]

    __getitem__ = get

    def size(self, n: int) -> int:
        return len(self.get(n))

    def invariance_ratio(self, n: int, k: int) -> Fraction:
        """|B(F_n, F_k F_k⁻¹)| / |F_n|."""
        shape = self.get(k)
        window = set_product(shape, set_inverse(shape))
        return Fraction(len(k_boundary(self.get(n), window)), self.size(n))

    def prefix(self, n_max: int) -> List[FiniteSubset]:
        return [self.get(n) for n in range(1, n_max + 1)]

    def __repr__(self) -> str:
        return f"FolnerSequence({self.name!r}, cap={self.cap})"


class BoxFolnerSequence(FolnerSequence):
    """Boxes [0, n)^d in Z^d, with cardinalities and box boundaries in closed form."""

    closed_form = True

    def __init__(self, model: GroupModel, cap: Optional[int] = None):
        dim = len(model.identity())
        self.dim = dim

        def rule(n: int) -> FiniteSubset:
            return FiniteSubset(model, itertools.product(range(n), repeat=dim), check=False)

        super().__init__(model, rule, f"box:{model.name}", cap)

    def size(self, n: int) -> int:
        self._check_index(n)
        return n**self.dim

    def invariance_ratio(self, n: int, k: int) -> Fraction:
        # F_k F_k⁻¹ is the box [-(k-1), k-1]^d with side 2k-1
        self._check_index(n)
        self._check_index(k)
        side = 2 * k - 1
        return Fraction(box_boundary_size([n] * self.dim, [side] * self.dim), n**self.dim)


def box_boundary_size(a_sides: Sequence[int], k_sides: Sequence[int]) -> int:
    """|B(A, K)| for boxes A, K in Z^d: |A - K| minus |{g : K + g within A}|."""
    outer = 1
    inner = 1
    for a, k in zip(a_sides, k_sides):
        outer *= a + k - 1
        inner *= max(0, a - k + 1)
    return outer - inner


def _heisenberg_rule(model: GroupModel) -> Callable[[int], FiniteSubset]:
    def rule(n: int) -> FiniteSubset:
        return FiniteSubset(
            model,
            ((a, b, c) for a in range(n) for b in range(n) for c in range(n * n)),
            check=False,
        )

    return rule


def _lamplighter_rule(model: GroupModel) -> Callable[[int], FiniteSubset]:
    def rule(n: int) -> FiniteSubset:
        configs = [
            combo
            for size in range(n + 1)
            for combo in itertools.combinations(range(n), size)
        ]
        return FiniteSubset(
            model, ((p, lamps) for p in range(n) for lamps in configs), check=False
        )

    return rule


def explicit_sequence(
    model: GroupModel, sets: Sequence[FiniteSubset], name: str = "explicit"
) -> FolnerSequence:
    """A finite user-supplied sequence F_1, ..., F_m (capped at m)."""
    shapes = list(sets)
    for shape in shapes:
        if shape.model.name != model.name:
            raise ConfigurationError(f"set over {shape.model.name} in a {model.name} sequence")
    return FolnerSequence(model, lambda n: shapes[n - 1], name, cap=len(shapes))


def folner_sequence(model_id: str, cap: Optional[int] = None) -> FolnerSequence:
    """Built-in Følner sequence for a configured model id."""
    model = get_model(model_id)
    family = model.name.split(":", 1)[0]
    rule_name = FOLNER_RULES.get(family)
    if rule_name == "box":
        return BoxFolnerSequence(model, cap)
    if rule_name == "heis-box":
        return FolnerSequence(model, _heisenberg_rule(model), "heis-box", cap)
    if rule_name == "lamp-box":
        return FolnerSequence(model, _lamplighter_rule(model), "lamp-box", cap)
    raise ConfigurationError(f"No built-in Følner rule for {model_id!r}")
