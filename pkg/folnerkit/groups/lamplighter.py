"""The lamplighter group Z/2 wr Z."""

from typing import List, Sequence, Tuple

from folnerkit.groups.base import Element, GroupModel


class LamplighterGroup(GroupModel):
    """Elements are (cursor, lamps) with lamps a sorted tuple of lit positions.

    The product is written so that translating on the left moves the cursor
    without moving the lamps:

        (p, S)(p', S') = (p + p', (S + p') xor S')

    With this law the sets {cursor in [0, n), lamps in [0, n)} are left Følner.
    Generators: cursor ±1 and the toggle at the cursor.
    """

    name = "lamplighter"

    def identity(self) -> Element:
        return (0, ())

    def mul(self, g: Element, h: Element) -> Element:
        p, lamps = self.check(g)
        p2, lamps2 = self.check(h)
        shifted = {s + p2 for s in lamps}
        return (p + p2, tuple(sorted(shifted.symmetric_difference(lamps2))))

    def inv(self, g: Element) -> Element:
        p, lamps = self.check(g)
        return (-p, tuple(s - p for s in lamps))

    def generators(self) -> Tuple[Element, ...]:
        return ((-1, ()), (0, (0,)), (1, ()))

    def contains(self, g: object) -> bool:
        if not (isinstance(g, tuple) and len(g) == 2):
            return False
        p, lamps = g
        if not isinstance(p, int) or isinstance(p, bool) or not isinstance(lamps, tuple):
            return False
        return all(isinstance(s, int) for s in lamps) and all(
            a < b for a, b in zip(lamps, lamps[1:])
        )

    def word_length(self, g: Element, max_radius: int = 64) -> int:
        """Toggles plus the shortest walk from 0 over every lit lamp ending at the cursor."""
        p, lamps = self.check(g)
        lo = min((0, p) + lamps)
        hi = max((0, p) + lamps)
        via_left = -lo + (hi - lo) + (hi - p)
        via_right = hi + (hi - lo) + (p - lo)
        return len(lamps) + min(via_left, via_right)

    def parse(self, coords: Sequence[int]) -> Element:
        if not coords:
            raise ValueError("lamplighter element needs at least a cursor coordinate")
        cursor, *lamps = (int(c) for c in coords)
        if len(set(lamps)) != len(lamps):
            raise ValueError(f"duplicate lamp positions in {coords}")
        return self.check((cursor, tuple(sorted(lamps))))

    def format(self, g: Element) -> List[int]:
        p, lamps = self.check(g)
        return [p, *lamps]
