"""Shift systems: full shifts and subshifts of finite type with a safe symbol."""

import itertools
from typing import Optional, Sequence, Tuple

import structlog

from folnerkit.core.config import settings
from folnerkit.core.exceptions import BudgetExceededError, ConfigurationError, ModelMismatchError
from folnerkit.groups.base import GroupModel
from folnerkit.groups.subsets import FiniteSubset, set_inverse, set_product
from folnerkit.shift.patterns import Pattern

logger = structlog.get_logger()

FULL = "full"
SFT = "sft"


class ShiftSystem:
    """Configurations {0, ..., q-1}^G, optionally restricted by forbidden patterns."""

    def __init__(
        self,
        model: GroupModel,
        alphabet_size: int,
        forbidden: Sequence[Pattern] = (),
        safe_symbol: Optional[int] = None,
    ):
        if alphabet_size < 2:
            raise ConfigurationError(f"alphabet needs at least 2 symbols, got {alphabet_size}")
        for pattern in forbidden:
            if pattern.model.name != model.name:
                raise ModelMismatchError(
                    f"forbidden pattern over {pattern.model.name} in a {model.name} system"
                )
            if any(s < 0 or s >= alphabet_size for s in pattern.symbols):
                raise ConfigurationError("forbidden pattern uses symbols outside the alphabet")
        if safe_symbol is not None:
            if not 0 <= safe_symbol < alphabet_size:
                raise ConfigurationError(f"safe symbol {safe_symbol} outside the alphabet")
            if any(safe_symbol in pattern.symbols for pattern in forbidden):
                raise ConfigurationError(
                    f"safe symbol {safe_symbol} appears in a forbidden pattern"
                )
        self.model = model
        self.alphabet_size = alphabet_size
        self.forbidden: Tuple[Pattern, ...] = tuple(forbidden)
        self.safe_symbol = safe_symbol

    @property
    def kind(self) -> str:
        return SFT if self.forbidden else FULL

    @property
    def alphabet(self) -> range:
        return range(self.alphabet_size)

    def __repr__(self) -> str:
        return (
            f"ShiftSystem({self.model.name}, q={self.alphabet_size}, kind={self.kind}, "
            f"forbidden={len(self.forbidden)}, safe={self.safe_symbol})"
        )


def full_shift(model: GroupModel, alphabet_size: int) -> ShiftSystem:
    return ShiftSystem(model, alphabet_size)


def occurrences(system: ShiftSystem, pattern: Pattern, forbidden: Pattern) -> int:
    """Number of translates g with (g·x)|_W equal to the forbidden pattern."""
    model = system.model
    mul = model.mul
    shape = forbidden.window
    candidates = set_product(set_inverse(FiniteSubset(model, shape.elements[:1])), pattern.window)
    hits = 0
    for g in candidates:
        found = True
        for w, s in forbidden.items():
            if pattern.get(mul(w, g)) != s:
                found = False
                break
        if found:
            hits += 1
    return hits


def is_admissible(system: ShiftSystem, pattern: Pattern) -> bool:
    """Whether no forbidden pattern occurs entirely inside the pattern's window."""
    if pattern.model.name != system.model.name:
        raise ModelMismatchError(
            f"pattern over {pattern.model.name}, system over {system.model.name}"
        )
    if any(s < 0 or s >= system.alphabet_size for s in pattern.symbols):
        return False
    return all(occurrences(system, pattern, f) == 0 for f in system.forbidden)


def count_admissible(system: ShiftSystem, window: FiniteSubset) -> int:
    """Admissible patterns on `window`, by exhaustive enumeration within the pattern budget."""
    q = system.alphabet_size
    if not system.forbidden:
        return q ** len(window)
    total = q ** len(window)
    limit = settings.budget.max_patterns
    if total > limit:
        raise BudgetExceededError(
            f"{total} patterns on a {len(window)}-site window (budget {limit})"
        )
    count = 0
    for symbols in itertools.product(range(q), repeat=len(window)):
        if is_admissible(system, Pattern(window, symbols)):
            count += 1
    logger.debug("Admissible patterns counted", sites=len(window), count=count)
    return count
