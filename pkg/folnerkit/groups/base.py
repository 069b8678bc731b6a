"""Abstract base class for finitely generated group models."""

from abc import ABC, abstractmethod
from typing import Dict, List, Sequence, Tuple

import structlog

from folnerkit.core.exceptions import BudgetExceededError, ModelMismatchError

logger = structlog.get_logger()

# Canonical, hashable and order-comparable element encoding
Element = Tuple


class GroupModel(ABC):
    """A concrete group with a fixed symmetric generating set.

    Elements are plain tuples in the model's canonical encoding; the model owns
    the arithmetic and validates membership.
    """

    name: str = ""

    def __init__(self) -> None:
        self._spheres: List[Tuple[Element, ...]] = [(self.identity(),)]
        self._seen: Dict[Element, int] = {self.identity(): 0}

    @abstractmethod
    def identity(self) -> Element:
        """Return the identity element."""
        pass

    @abstractmethod
    def mul(self, g: Element, h: Element) -> Element:
        """Return the product g·h."""
        pass

    @abstractmethod
    def inv(self, g: Element) -> Element:
        """Return the inverse of g."""
        pass

    @abstractmethod
    def generators(self) -> Tuple[Element, ...]:
        """Return the standard symmetric generating set."""
        pass

    @abstractmethod
    def contains(self, g: object) -> bool:
        """Whether g is a well-formed element of this model."""
        pass

    @abstractmethod
    def parse(self, coords: Sequence[int]) -> Element:
        """Build an element from a flat list of integer coordinates."""
        pass

    @abstractmethod
    def format(self, g: Element) -> List[int]:
        """Flatten an element to integer coordinates (inverse of parse)."""
        pass

    def check(self, g: object) -> Element:
        """Validate membership, raising on a foreign element."""
        if not self.contains(g):
            raise ModelMismatchError(f"{g!r} is not an element of {self.name}")
        return g  # type: ignore[return-value]

    def word_length(self, g: Element, max_radius: int = 64) -> int:
        """Word length with respect to the standard generators (breadth-first)."""
        self.check(g)
        radius = 0
        while g not in self._seen:
            radius += 1
            if radius > max_radius:
                raise BudgetExceededError(
                    f"word length of {g!r} exceeds search radius {max_radius}"
                )
            self.sphere(radius)
        return self._seen[g]

    def sphere(self, radius: int) -> Tuple[Element, ...]:
        """Elements of word length exactly `radius`, in canonical order."""
        gens = self.generators()
        while len(self._spheres) <= radius:
            frontier = self._spheres[-1]
            depth = len(self._spheres)
            shell = set()
            for g in frontier:
                for s in gens:
                    h = self.mul(g, s)
                    if h not in self._seen:
                        self._seen[h] = depth
                        shell.add(h)
            self._spheres.append(tuple(sorted(shell)))
        return self._spheres[radius]

    def ball_elements(self, radius: int) -> Tuple[Element, ...]:
        """Elements of word length at most `radius`, in canonical order."""
        out: List[Element] = []
        for r in range(radius + 1):
            out.extend(self.sphere(r))
        return tuple(sorted(out))

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}({self.name!r})"
