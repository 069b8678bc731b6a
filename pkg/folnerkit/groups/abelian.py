"""The integer lattice Z^d."""

from typing import List, Sequence, Tuple

from folnerkit.groups.base import Element, GroupModel


class IntegerLattice(GroupModel):
    """Z^d with coordinatewise addition and generators ±e_i."""

    def __init__(self, dim: int):
        if dim < 1:
            raise ValueError(f"dimension must be positive, got {dim}")
        self.dim = dim
        self.name = f"zd:{dim}"
        super().__init__()

    def identity(self) -> Element:
        return (0,) * self.dim

    def mul(self, g: Element, h: Element) -> Element:
        self.check(g)
        self.check(h)
        return tuple(a + b for a, b in zip(g, h))

    def inv(self, g: Element) -> Element:
        self.check(g)
        return tuple(-a for a in g)

    def generators(self) -> Tuple[Element, ...]:
        gens = []
        for i in range(self.dim):
            for sign in (1, -1):
                e = [0] * self.dim
                e[i] = sign
                gens.append(tuple(e))
        return tuple(sorted(gens))

    def contains(self, g: object) -> bool:
        return (
            isinstance(g, tuple)
            and len(g) == self.dim
            and all(isinstance(a, int) and not isinstance(a, bool) for a in g)
        )

    def word_length(self, g: Element, max_radius: int = 64) -> int:
        self.check(g)
        return sum(abs(a) for a in g)

    def parse(self, coords: Sequence[int]) -> Element:
        return self.check(tuple(int(c) for c in coords))

    def format(self, g: Element) -> List[int]:
        return list(self.check(g))
