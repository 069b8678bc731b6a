"""The discrete Heisenberg group H3(Z)."""

from typing import List, Sequence, Tuple

from folnerkit.groups.base import Element, GroupModel


class HeisenbergGroup(GroupModel):
    """Integer triples with (a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab').

    Generators are x = (1,0,0) and y = (0,1,0) with their inverses; word
    length is computed breadth-first on the Cayley graph.
    """

    name = "heis3"

    def identity(self) -> Element:
        return (0, 0, 0)

    def mul(self, g: Element, h: Element) -> Element:
        self.check(g)
        self.check(h)
        a, b, c = g
        a2, b2, c2 = h
        return (a + a2, b + b2, c + c2 + a * b2)

    def inv(self, g: Element) -> Element:
        a, b, c = self.check(g)
        return (-a, -b, -c + a * b)

    def generators(self) -> Tuple[Element, ...]:
        return ((-1, 0, 0), (0, -1, 0), (0, 1, 0), (1, 0, 0))

    def contains(self, g: object) -> bool:
        return (
            isinstance(g, tuple)
            and len(g) == 3
            and all(isinstance(a, int) and not isinstance(a, bool) for a in g)
        )

    def parse(self, coords: Sequence[int]) -> Element:
        return self.check(tuple(int(c) for c in coords))

    def format(self, g: Element) -> List[int]:
        return list(self.check(g))
